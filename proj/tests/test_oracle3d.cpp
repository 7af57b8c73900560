#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>
#include <numbers>

#include "radial_gate/error.hpp"
#include "radial_gate/oracle3d.hpp"
#include "radial_gate/solver.hpp"

using namespace radial_gate;
using namespace radial_gate::oracle3d;

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

RadialSamples profile(const std::function<double(double)>& f) {
  const double h = 1e-4;
  return RadialSamples::tabulate(model::RadialGrid(h, 2.0, 20000), f);
}

}  // namespace

TEST_CASE("grid layout keeps the origin between nodes") {
  const CartesianGrid g(2.0, 16);
  CHECK(g.spacing() == doctest::Approx(0.25));
  CHECK(g.x(0) == doctest::Approx(-1.875));
  CHECK(g.x(7) == doctest::Approx(-0.125));
  CHECK(g.x(8) == doctest::Approx(0.125));
  CHECK(g.size() == 16u * 16u * 16u);
  CHECK_THROWS_AS(CartesianGrid(2.0, 15), Error);
  CHECK_THROWS_AS(CartesianGrid(2.0, 14), Error);
  CHECK_THROWS_AS(CartesianGrid(0.0, 16), Error);
}

TEST_CASE("free particle in the box") {
  const CartesianGrid g(1.0, 24);
  const auto r = lowest_eigenvalues_3d(model::Coulomb{0.0}, 1.0, g, 1);
  const double continuum = 3.0 * pi * pi / (2.0 * 4.0);
  CHECK(rel(r.eigenvalues[0], continuum) < 0.01);
  // the discrete stencil value itself
  const double h = g.spacing();
  const double stencil = 3.0 * (2.0 / (h * h)) * (1.0 - std::cos(pi * h / 2.0)) / 2.0;
  CHECK(rel(r.eigenvalues[0], stencil) < 1e-8);
}

TEST_CASE("oscillator ground state and degeneracy") {
  const auto r = lowest_eigenvalues_3d(model::Harmonic{1.0}, 1.0, CartesianGrid(6.0, 48), 4);
  CHECK(rel(r.eigenvalues[0], 1.5) < 0.03);
  for (std::size_t i = 1; i < 4; ++i) CHECK(rel(r.eigenvalues[i], 2.5) < 0.03);
  for (double res : r.residuals) CHECK(res <= 1e-8);
}

TEST_CASE("radial and 3D ground states agree and converge together") {
  const auto radial = solver::bound_states(model::Harmonic{1.0}, 0, 1.0, indicial::DirichletOrigin{},
                                           {0.5, 2.0}, 1, model::RadialGrid(1e-4, 12.0, 6000));
  const double e = radial.entries.at(0).energy;
  const double d48 = std::abs(lowest_eigenvalues_3d(model::Harmonic{1.0}, 1.0, CartesianGrid(6.0, 48), 1).eigenvalues[0] - e);
  const double d64 = std::abs(lowest_eigenvalues_3d(model::Harmonic{1.0}, 1.0, CartesianGrid(6.0, 64), 1).eigenvalues[0] - e);
  CHECK(d48 <= 0.03 * e);
  CHECK(d64 < d48);
}

TEST_CASE("hydrogen within the cusp-limited tolerance") {
  const auto r = lowest_eigenvalues_3d(model::Coulomb{1.0}, 1.0, CartesianGrid(12.0, 64), 1);
  CHECK(rel(r.eigenvalues[0], -0.5) < 0.10);
}

TEST_CASE("eigensolver options") {
  CHECK_THROWS_AS(lowest_eigenvalues_3d(model::Harmonic{1.0}, 1.0, CartesianGrid(6.0, 16), 6), Error);
  EigenOptions tight;
  tight.max_iterations = 1;
  try {
    lowest_eigenvalues_3d(model::Harmonic{1.0}, 1.0, CartesianGrid(6.0, 32), 2, tight);
    FAIL("expected no convergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_convergence);
  }
}

TEST_CASE("point defect examples") {
  const CartesianGrid g(2.0, 96);
  const double one = point_defect_3d(profile([](double) { return 1.0; }), g);
  CHECK(one < 0.0);
  CHECK(rel(one, -4.0 * pi) < 0.25);
  CHECK(std::abs(point_defect_3d(profile([](double r) { return r; }), g)) < 0.05);
  CHECK(std::abs(point_defect_3d(profile([](double r) { return r * std::exp(-r); }), g)) < 0.05);
}

TEST_CASE("point defect dichotomy at equal resolution") {
  for (std::size_t n : {48u, 96u}) {
    const CartesianGrid g(2.0, n);
    const double with_source = point_defect_3d(profile([](double r) { return std::exp(-r); }), g);
    const double without = point_defect_3d(profile([](double r) { return r * std::exp(-r); }), g);
    CHECK(std::abs(with_source) >= 20.0 * std::abs(without));
  }
}

TEST_CASE("point defect of 1/r is the same at every resolution") {
  // psi = 1/r is homogeneous, so the stencil sum times h^3 does not depend on h.
  const double a = point_defect_3d(profile([](double) { return 1.0; }), CartesianGrid(2.0, 48));
  const double b = point_defect_3d(profile([](double) { return 1.0; }), CartesianGrid(2.0, 96));
  CHECK(a == doctest::Approx(b).epsilon(1e-9));
  CHECK(a == doctest::Approx(48.0 * (1.0 / std::sqrt(11.0) - 1.0 / std::sqrt(3.0))).epsilon(1e-9));
}

TEST_CASE("smooth u(0) = 1 profiles approach the 1/r value monotonically") {
  const double limit = 48.0 * (1.0 / std::sqrt(11.0) - 1.0 / std::sqrt(3.0));
  double previous = 1e9;
  for (std::size_t n : {24u, 48u, 96u}) {
    const double d = point_defect_3d(profile([](double r) { return std::cos(r); }), CartesianGrid(2.0, n));
    CHECK(d < 0.0);
    CHECK(std::abs(d - limit) < previous);
    previous = std::abs(d - limit);
  }
}
