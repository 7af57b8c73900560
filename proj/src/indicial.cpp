#include "radial_gate/indicial.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "radial_gate/error.hpp"

namespace radial_gate::indicial {

void validate(const BoundaryPolicy& policy) {
  auto check = [](double theta, double r_ref) {
    require(std::isfinite(theta) && theta >= 0.0 && theta < std::numbers::pi,
            "mixing angle theta must lie in [0, pi)");
    require(std::isfinite(r_ref) && r_ref > 0.0, "reference radius r_ref must be > 0");
  };
  if (auto d = std::get_if<DirichletOrigin>(&policy)) {
    if (d->theta) check(*d->theta, d->r_ref);
  } else {
    const auto& s = std::get<SquareIntegrableOnly>(policy);
    check(s.theta, s.r_ref);
  }
}

IndicialReport indicial_exponents(const model::OriginClass& origin, int l, double mass) {
  require(l >= 0, "orbital quantum number l must be >= 0");
  require(std::isfinite(mass) && mass > 0.0, "mass must be > 0");
  if (const auto* s = std::get_if<model::StronglySingular>(&origin)) {
    fail(ErrorCode::strongly_singular_unsupported,
         "no two-term indicial equation for g/r^n with n = " + std::to_string(s->n) +
             " > 2; use the asymptotic origin limit instead");
  }

  IndicialReport report;
  report.origin = origin;
  report.l = l;
  report.mass = mass;

  const double ll = static_cast<double>(l);
  if (std::holds_alternative<model::Regular>(origin)) {
    report.s_plus = ll + 1.0;
    report.s_minus = -ll;
    return report;
  }

  const double v0 = std::get<model::TransitiveSingular>(origin).v0;
  const double half = ll + 0.5;
  const double disc = half * half - 2.0 * mass * v0;
  if (disc < 0.0) {
    report.fall_to_center = true;
    return report;
  }
  const double p = std::sqrt(disc);
  report.p_value = p;
  report.s_plus = 0.5 + p;
  if (p == 0.0) {
    report.degenerate = true;
  } else {
    report.s_minus = 0.5 - p;
  }
  return report;
}

bool square_integrable(double s) { return s > -0.5; }

bool vanishes_at_origin(double s) { return s > 0.0; }

bool admissible(double s, const BoundaryPolicy& policy) {
  return std::holds_alternative<DirichletOrigin>(policy) ? vanishes_at_origin(s)
                                                         : square_integrable(s);
}

IndicialReport admissibility(IndicialReport report, const BoundaryPolicy& policy) {
  validate(policy);
  if (report.fall_to_center || !report.s_plus) {
    fail(ErrorCode::fall_to_center, "exponents are complex (fall to center)");
  }
  auto flags = [&](double s) {
    return ExponentFlags{square_integrable(s), vanishes_at_origin(s), admissible(s, policy)};
  };
  report.policy = policy;
  report.plus_flags = flags(*report.s_plus);
  if (report.s_minus) {
    report.minus_flags = flags(*report.s_minus);
    report.ambiguous = report.plus_flags->admissible && report.minus_flags->admissible;
  } else {
    report.minus_flags.reset();
    report.ambiguous = false;
  }
  return report;
}

}  // namespace radial_gate::indicial
