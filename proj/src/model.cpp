#include "radial_gate/model.hpp"

#include <cmath>
#include <string>

#include "radial_gate/error.hpp"

namespace radial_gate::model {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite(double x, const char* name) {
  require(std::isfinite(x), std::string("potential parameter '") + name + "' must be finite");
}

}  // namespace

void validate(const Potential& p) {
  std::visit(overloaded{
                 [](const Coulomb& c) { require_finite(c.alpha, "alpha"); },
                 [](const InverseSquare& c) { require_finite(c.v0, "v0"); },
                 [](const PowerLaw& c) {
                   require_finite(c.g, "g");
                   require_finite(c.n, "n");
                   require(c.n > 0.0, "power-law exponent n must be > 0");
                 },
                 [](const Harmonic& c) { require_finite(c.omega, "omega"); },
                 [](const RegularizedInverseSquare& c) {
                   require_finite(c.v0, "v0");
                   require_finite(c.r_core, "rcore");
                   require(c.r_core > 0.0, "regularized core radius rcore must be > 0");
                 },
             },
             p);
}

bool finite_at_origin(const Potential& p) {
  return std::visit(overloaded{
                        [](const Coulomb& c) { return c.alpha == 0.0; },
                        [](const InverseSquare& c) { return c.v0 == 0.0; },
                        [](const PowerLaw& c) { return c.g == 0.0; },
                        [](const Harmonic&) { return true; },
                        [](const RegularizedInverseSquare&) { return true; },
                    },
                    p);
}

double evaluate_potential(const Potential& p, double r, double mass) {
  if (!(r > 0.0) && !(r == 0.0 && finite_at_origin(p))) {
    fail(ErrorCode::domain_error,
         "potential evaluated at r = " + std::to_string(r) + " where it is singular");
  }
  return std::visit(overloaded{
                        [r](const Coulomb& c) { return r == 0.0 ? 0.0 : -c.alpha / r; },
                        [r](const InverseSquare& c) { return r == 0.0 ? 0.0 : -c.v0 / (r * r); },
                        [r](const PowerLaw& c) { return r == 0.0 ? 0.0 : c.g / std::pow(r, c.n); },
                        [r, mass](const Harmonic& c) { return 0.5 * mass * c.omega * c.omega * r * r; },
                        [r](const RegularizedInverseSquare& c) {
                          const double rr = r < c.r_core ? c.r_core : r;
                          return -c.v0 / (rr * rr);
                        },
                    },
                    p);
}

OriginClass classify_origin(const Potential& p) {
  return std::visit(overloaded{
                        [](const Coulomb&) -> OriginClass { return Regular{}; },
                        [](const InverseSquare& c) -> OriginClass {
                          if (c.v0 == 0.0) return Regular{};
                          return TransitiveSingular{c.v0};
                        },
                        [](const PowerLaw& c) -> OriginClass {
                          if (c.g == 0.0 || c.n < 2.0) return Regular{};
                          if (c.n == 2.0) return TransitiveSingular{-c.g};
                          return StronglySingular{c.n, c.g};
                        },
                        [](const Harmonic&) -> OriginClass { return Regular{}; },
                        [](const RegularizedInverseSquare&) -> OriginClass { return Regular{}; },
                    },
                    p);
}

std::string_view origin_class_name(const OriginClass& c) {
  return std::visit(overloaded{
                        [](const Regular&) -> std::string_view { return "regular"; },
                        [](const TransitiveSingular&) -> std::string_view {
                          return "transitive_singular";
                        },
                        [](const StronglySingular&) -> std::string_view {
                          return "strongly_singular";
                        },
                    },
                    c);
}

RadialGrid::RadialGrid(double r_min, double r_max, std::size_t n_points)
    : r_min_(r_min), r_max_(r_max), n_points_(n_points), h_(0.0) {
  require(std::isfinite(r_min) && std::isfinite(r_max), "grid bounds must be finite");
  require(r_min > 0.0, "grid r_min must be > 0");
  require(r_max > r_min, "grid r_max must exceed r_min");
  require(n_points >= min_points, "grid needs at least 16 points");
  h_ = (r_max_ - r_min_) / static_cast<double>(n_points_ - 1);
}

RadialGrid RadialGrid::scaled(double lambda) const {
  require(lambda > 0.0, "grid scale factor must be > 0");
  return RadialGrid(lambda * r_min_, lambda * r_max_, n_points_);
}

}  // namespace radial_gate::model
