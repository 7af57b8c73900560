#include <cmath>
#include <string>

#include "radial_gate/error.hpp"
#include "radial_gate/solver.hpp"

namespace radial_gate::solver {

namespace {

// Numerov is only trusted once the singular part of k(r) is small on the
// scale of one step: h^2 (|L|/r^2 + |q1|/r) <= this bound.
constexpr double singular_step_bound = 0.6;
// A weighted r^{s-} branch is started at r >= this many grid spacings: Numerov
// errors near the origin leak into the r^{s+} branch amplified by r^{s- - s+}.
constexpr double mixed_start_spacings = 50.0;

}  // namespace

double RadialProblem::k(double r, double energy) const {
  const double centrifugal = static_cast<double>(l) * (l + 1) / (r * r);
  const double v = model::evaluate_potential(potential, r, mass);
  if (kind == EquationKind::schrodinger) return 2.0 * mass * (energy - v) - centrifugal;
  const double kinetic = energy - v;
  return kinetic * kinetic - mass * mass - centrifugal;
}

OriginExpansion origin_expansion(const RadialProblem& problem, double energy,
                                 const model::RadialGrid& /*grid*/) {
  const double m = problem.mass;
  OriginExpansion e;
  e.inverse_square = static_cast<double>(problem.l) * (problem.l + 1);

  if (problem.kind == EquationKind::klein_gordon) {
    const auto* c = std::get_if<model::Coulomb>(&problem.potential);
    require(c != nullptr, "Klein-Gordon mode supports the Coulomb potential only");
    e.inverse_square -= c->alpha * c->alpha;
    e.q[0] = -2.0 * energy * c->alpha;
    e.q[1] = m * m - energy * energy;
    return e;
  }

  e.q[1] = -2.0 * m * energy;
  if (const auto* c = std::get_if<model::Coulomb>(&problem.potential)) {
    e.q[0] = -2.0 * m * c->alpha;
  } else if (const auto* c = std::get_if<model::InverseSquare>(&problem.potential)) {
    e.inverse_square -= 2.0 * m * c->v0;
  } else if (const auto* c = std::get_if<model::Harmonic>(&problem.potential)) {
    e.q[3] = m * m * c->omega * c->omega;
  } else if (const auto* c = std::get_if<model::RegularizedInverseSquare>(&problem.potential)) {
    e.q[1] += -2.0 * m * c->v0 / (c->r_core * c->r_core);
  } else {
    const auto& pw = std::get<model::PowerLaw>(problem.potential);
    if (pw.g != 0.0) {
      if (pw.n > 2.0) {
        fail(ErrorCode::strongly_singular_unsupported,
             "shooting needs a Frobenius start; g/r^n with n = " + std::to_string(pw.n) +
                 " > 2 has none");
      }
      if (pw.n == 2.0) {
        e.inverse_square += 2.0 * m * pw.g;
      } else if (pw.n == 1.0) {
        e.q[0] = 2.0 * m * pw.g;
      } else {
        e.series = false;
      }
    }
  }
  return e;
}

indicial::IndicialReport problem_exponents(const RadialProblem& problem) {
  if (problem.kind == EquationKind::schrodinger) {
    return indicial::indicial_exponents(model::classify_origin(problem.potential), problem.l,
                                        problem.mass);
  }
  const auto* c = std::get_if<model::Coulomb>(&problem.potential);
  require(c != nullptr, "Klein-Gordon mode supports the Coulomb potential only");
  // alpha^2 plays the role of 2 m v0 in the indicial equation
  model::OriginClass origin = model::Regular{};
  if (c->alpha != 0.0) origin = model::TransitiveSingular{c->alpha * c->alpha / (2.0 * problem.mass)};
  return indicial::indicial_exponents(origin, problem.l, problem.mass);
}

std::vector<double> frobenius_coefficients(const OriginExpansion& e, double s,
                                           std::size_t max_terms) {
  std::vector<double> c{1.0};
  if (!e.series) return c;
  for (std::size_t j = 1; j < max_terms; ++j) {
    const double jj = static_cast<double>(j);
    const double denom = jj * (2.0 * s + jj - 1.0);
    if (std::abs(denom) < 1e-12) break;
    double acc = 0.0;
    for (std::size_t k = 1; k <= 4 && k <= j; ++k) acc += e.q[k - 1] * c[j - k];
    c.push_back(acc / denom);
  }
  return c;
}

namespace {

double series_value(const std::vector<double>& c, double r) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * r + *it;
  return acc;
}

}  // namespace

double FrobeniusStart::value(double r) const {
  double u = c1 * std::pow(r, s_plus) * series_value(series_plus, r);
  if (c2 != 0.0 && s_minus) {
    u += c2 * std::pow(r / r_ref, *s_minus) * std::pow(r_ref, s_plus) *
         series_value(series_minus, r);
  }
  return u;
}

FrobeniusStart make_frobenius_start(const RadialProblem& problem, double energy,
                                    const model::RadialGrid& grid,
                                    const indicial::BoundaryPolicy& policy) {
  const auto report = indicial::admissibility(problem_exponents(problem), policy);
  const auto expansion = origin_expansion(problem, energy, grid);

  FrobeniusStart start;
  start.s_plus = *report.s_plus;
  start.s_minus = report.s_minus;

  std::optional<double> theta;
  if (const auto* d = std::get_if<indicial::DirichletOrigin>(&policy)) {
    theta = d->theta;
    start.r_ref = d->r_ref;
    if (theta && *theta != 0.0 && !report.ambiguous.value_or(false)) {
      fail(ErrorCode::domain_error,
           "a mixing angle under the Dirichlet origin condition needs both branches to vanish at "
           "the origin");
    }
  } else {
    const auto& si = std::get<indicial::SquareIntegrableOnly>(policy);
    theta = si.theta;
    start.r_ref = si.r_ref;
  }
  if (theta) {
    start.c1 = std::cos(*theta);
    start.c2 = std::sin(*theta);
  }
  if (start.c2 != 0.0) {
    if (!report.s_minus) {
      fail(ErrorCode::domain_error,
           "degenerate exponent: the logarithmic second branch cannot be mixed in");
    }
    if (!report.minus_flags->admissible) {
      fail(ErrorCode::domain_error, "the subdominant branch is not admissible under this policy");
    }
  }

  start.series_plus = frobenius_coefficients(expansion, start.s_plus);
  if (start.s_minus) start.series_minus = frobenius_coefficients(expansion, *start.s_minus);

  const double h = grid.spacing();
  const double singular_l = std::abs(expansion.inverse_square);
  const double singular_c = std::abs(expansion.q[0]);
  std::size_t first = 0;
  while (first + 2 < grid.size()) {
    const double r = grid.r(first);
    if (h * h * (singular_l / (r * r) + singular_c / r) <= singular_step_bound) break;
    ++first;
  }
  if (start.c2 != 0.0) {
    const double r_start = mixed_start_spacings * h;
    if (grid.r(first) < r_start) {
      first = static_cast<std::size_t>(std::ceil((r_start - grid.r_min()) / h));
    }
  }
  require(first + 1 < grid.size() / 4, "grid is too coarse to resolve the origin behaviour");
  start.first_node = first;

  if (const auto* c = std::get_if<model::RegularizedInverseSquare>(&problem.potential)) {
    require(grid.r(first + 1) < c->r_core,
            "the grid must resolve the regularized core: r_min + h must lie below rcore");
  }
  return start;
}

}  // namespace radial_gate::solver
