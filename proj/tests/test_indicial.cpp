#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "radial_gate/error.hpp"
#include "radial_gate/indicial.hpp"

using namespace radial_gate;
using namespace radial_gate::indicial;

TEST_CASE("regular origin gives l+1 and -l") {
  const auto r = indicial_exponents(model::Regular{}, 1, 1.0);
  CHECK(*r.s_plus == 2.0);
  CHECK(*r.s_minus == -1.0);
  CHECK_FALSE(r.p_value.has_value());
  CHECK_FALSE(r.fall_to_center);
}

TEST_CASE("transitive singular exponents") {
  const auto r = indicial_exponents(model::TransitiveSingular{0.08}, 0, 1.0);
  CHECK(*r.p_value == doctest::Approx(0.3));
  CHECK(*r.s_plus == doctest::Approx(0.8));
  CHECK(*r.s_minus == doctest::Approx(0.2));

  const auto f = indicial_exponents(model::TransitiveSingular{0.25}, 0, 1.0);
  CHECK(f.fall_to_center);
  CHECK_FALSE(f.s_plus.has_value());
  CHECK_FALSE(f.s_minus.has_value());
}

TEST_CASE("P = 0 is reported as a single degenerate exponent") {
  const auto r = indicial_exponents(model::TransitiveSingular{0.125}, 0, 1.0);
  CHECK(r.degenerate);
  CHECK(*r.s_plus == doctest::Approx(0.5));
  CHECK_FALSE(r.s_minus.has_value());
  const auto a = admissibility(r, DirichletOrigin{});
  CHECK_FALSE(*a.ambiguous);
}

TEST_CASE("admissibility examples") {
  SUBCASE("regular l = 0 under Dirichlet") {
    const auto a = admissibility(indicial_exponents(model::Regular{}, 0, 1.0), DirichletOrigin{});
    CHECK(a.plus_flags->admissible);
    CHECK_FALSE(a.minus_flags->vanishes_at_origin);
    CHECK_FALSE(a.minus_flags->admissible);
    CHECK_FALSE(*a.ambiguous);
  }
  SUBCASE("P = 0.7 under Dirichlet") {
    const auto a =
        admissibility(indicial_exponents(model::TransitiveSingular{-0.12}, 0, 1.0), DirichletOrigin{});
    CHECK(*a.s_minus == doctest::Approx(-0.2));
    CHECK(a.minus_flags->square_integrable);
    CHECK_FALSE(a.minus_flags->admissible);
  }
  SUBCASE("P = 0.3 under Dirichlet is ambiguous") {
    const auto a =
        admissibility(indicial_exponents(model::TransitiveSingular{0.08}, 0, 1.0), DirichletOrigin{});
    CHECK(a.plus_flags->admissible);
    CHECK(a.minus_flags->admissible);
    CHECK(*a.ambiguous);
  }
  SUBCASE("P = 1/2 leaves s- = 0, which Dirichlet rejects") {
    const auto a =
        admissibility(indicial_exponents(model::TransitiveSingular{0.0}, 0, 1.0), DirichletOrigin{});
    CHECK(*a.s_minus == 0.0);
    CHECK_FALSE(a.minus_flags->admissible);
    CHECK(admissible(0.0, SquareIntegrableOnly{}));
  }
}

TEST_CASE("threshold conventions") {
  CHECK_FALSE(square_integrable(-0.5));
  CHECK(square_integrable(-0.4999));
  CHECK_FALSE(vanishes_at_origin(0.0));
  CHECK(vanishes_at_origin(1e-12));
  CHECK_FALSE(admissible(-0.5, SquareIntegrableOnly{}));
}

TEST_CASE("Vieta relations") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> v(-3.0, 3.0);
  std::uniform_real_distribution<double> m(0.2, 3.0);
  std::uniform_int_distribution<int> l(0, 6);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const int li = l(rng);
    const double mi = m(rng);
    const double vi = v(rng);
    const auto r = indicial_exponents(model::TransitiveSingular{vi}, li, mi);
    if (r.fall_to_center || r.degenerate) continue;
    ++checked;
    CHECK(*r.s_plus + *r.s_minus == doctest::Approx(1.0).epsilon(1e-12));
    const double product = 2.0 * mi * vi - li * (li + 1.0);
    CHECK(std::abs(*r.s_plus * *r.s_minus - product) < 1e-12 * std::max(1.0, std::abs(product)));
    CHECK(*r.s_plus >= *r.s_minus);
  }
  CHECK(checked > 500);
  for (int li = 0; li < 6; ++li) {
    const auto r = indicial_exponents(model::Regular{}, li, 1.0);
    CHECK(*r.s_plus + *r.s_minus == 1.0);
    CHECK(*r.s_plus * *r.s_minus == -li * (li + 1.0));
  }
}

TEST_CASE("the square-integrable and Dirichlet ranges") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> p(0.0, 1.0);
  std::uniform_real_distribution<double> m(0.2, 3.0);
  std::uniform_int_distribution<int> l(0, 5);
  for (int i = 0; i < 1000; ++i) {
    const double pi = p(rng);
    const int li = l(rng);
    const double mi = m(rng);
    const double v0 = ((li + 0.5) * (li + 0.5) - pi * pi) / (2.0 * mi);
    const auto base = indicial_exponents(model::TransitiveSingular{v0}, li, mi);
    const auto si = admissibility(base, SquareIntegrableOnly{0.3, 1.0});
    const auto d = admissibility(base, DirichletOrigin{});
    CHECK(si.plus_flags->admissible);
    CHECK(si.minus_flags->admissible);
    CHECK(d.minus_flags->admissible == (pi < 0.5));
    // a stricter policy never admits more
    CHECK((!d.plus_flags->admissible || si.plus_flags->admissible));
    CHECK((!d.minus_flags->admissible || si.minus_flags->admissible));
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(indicial_exponents(model::StronglySingular{3.0, 0.1}, 0, 1.0), Error);
  try {
    indicial_exponents(model::StronglySingular{3.0, 0.1}, 0, 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::strongly_singular_unsupported);
  }
  const auto f = indicial_exponents(model::TransitiveSingular{1.0}, 0, 1.0);
  try {
    admissibility(f, DirichletOrigin{});
    FAIL("expected fall to center");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::fall_to_center);
  }
  CHECK_THROWS_AS(validate(SquareIntegrableOnly{std::numbers::pi, 1.0}), Error);
  CHECK_THROWS_AS(validate(SquareIntegrableOnly{-0.1, 1.0}), Error);
  CHECK_THROWS_AS(validate(SquareIntegrableOnly{0.1, 0.0}), Error);
  CHECK_NOTHROW(validate(SquareIntegrableOnly{0.0, 2.0}));
}
