#include <cmath>
#include <string>

#include "radial_gate/error.hpp"
#include "shooting.hpp"

namespace radial_gate::solver {

namespace detail {

namespace {

constexpr double overflow_guard = 1e150;

}  // namespace

KTable::KTable(const RadialProblem& problem, const model::RadialGrid& grid)
    : kind_(problem.kind), mass_(problem.mass) {
  potential_.resize(grid.size());
  centrifugal_.resize(grid.size());
  const double ll = static_cast<double>(problem.l) * (problem.l + 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = grid.r(i);
    potential_[i] = model::evaluate_potential(problem.potential, r, problem.mass);
    centrifugal_[i] = ll / (r * r);
  }
}

void KTable::fill(double energy, std::vector<double>& k) const {
  k.resize(potential_.size());
  if (kind_ == EquationKind::schrodinger) {
    for (std::size_t i = 0; i < k.size(); ++i) {
      k[i] = 2.0 * mass_ * (energy - potential_[i]) - centrifugal_[i];
    }
  } else {
    for (std::size_t i = 0; i < k.size(); ++i) {
      const double t = energy - potential_[i];
      k[i] = t * t - mass_ * mass_ - centrifugal_[i];
    }
  }
}

bool sweep(std::span<const double> k, double h, std::span<double> u, std::size_t from,
           std::size_t to, int step) {
  const double c = h * h / 12.0;
  bool rescaled = false;
  auto f = [&](std::size_t i) { return 1.0 + c * k[i]; };
  std::size_t prev = from;
  std::size_t cur = from + step;
  while (cur != to) {
    const std::size_t next = cur + step;
    u[next] = ((12.0 - 10.0 * f(cur)) * u[cur] - f(prev) * u[prev]) / f(next);
    if (std::abs(u[next]) > overflow_guard) {
      const double scale = 1.0 / std::abs(u[next]);
      for (double& v : u) v *= scale;
      rescaled = true;
    }
    prev = cur;
    cur = next;
  }
  return rescaled;
}

void seed_outward(const FrobeniusStart& start, const model::RadialGrid& grid,
                  std::span<double> u) {
  for (std::size_t i = 0; i <= start.first_node + 1; ++i) u[i] = start.value(grid.r(i));
}

std::size_t tail_start(std::span<const double> k, double h, OuterBoundary outer,
                       std::size_t turning) {
  const std::size_t n = k.size();
  if (outer == OuterBoundary::wall) return n - 1;
  double depth = 0.0;
  for (std::size_t i = turning + 1; i < n; ++i) {
    if (k[i] < 0.0) depth += std::sqrt(-k[i]) * h;
    if (depth > tail_depth && i >= turning + 2) return i;
  }
  return n - 1;
}

void seed_inward(std::span<const double> k, double h, OuterBoundary outer, double far_kappa_sq,
                 std::size_t top, std::span<double> u) {
  if (outer == OuterBoundary::wall) {
    u[top] = 0.0;
    u[top - 1] = h;
    return;
  }
  if (!(k[top] < 0.0) && !(far_kappa_sq > 0.0)) {
    fail(ErrorCode::non_decaying_tail,
         "inward start needs a decaying tail (energy at or above the continuum)");
  }
  const double far_kappa = far_kappa_sq > 0.0 ? std::sqrt(far_kappa_sq) : std::sqrt(-k[top]);
  const double kappa_out = k[top] < 0.0 ? std::sqrt(-k[top]) : far_kappa;
  const double kappa_in = k[top - 1] < 0.0 ? std::sqrt(-k[top - 1]) : far_kappa;
  u[top] = 1.0;
  u[top - 1] = std::exp(0.5 * h * (kappa_out + kappa_in));
}

std::size_t outer_turning_point(std::span<const double> k) {
  for (std::size_t i = k.size(); i-- > 0;) {
    if (k[i] > 0.0) return i;
  }
  return 0;
}

}  // namespace detail

double far_kappa_squared(const RadialProblem& problem, double energy) {
  if (problem.kind == EquationKind::klein_gordon) {
    return problem.mass * problem.mass - energy * energy;
  }
  return -2.0 * problem.mass * energy;
}

OuterBoundary default_outer_boundary(const model::Potential& p) {
  if (const auto* c = std::get_if<model::InverseSquare>(&p)) {
    return c->v0 != 0.0 ? OuterBoundary::wall : OuterBoundary::decaying;
  }
  if (const auto* c = std::get_if<model::PowerLaw>(&p)) {
    return c->n == 2.0 && c->g != 0.0 ? OuterBoundary::wall : OuterBoundary::decaying;
  }
  return OuterBoundary::decaying;
}

NumerovResult numerov_integrate(const RadialProblem& problem, double energy,
                                const model::RadialGrid& grid, const FrobeniusStart& start,
                                Direction direction, OuterBoundary outer) {
  require(std::isfinite(energy), "energy must be finite");
  std::vector<double> k;
  detail::KTable(problem, grid).fill(energy, k);
  std::vector<double> u(grid.size(), 0.0);
  const double h = grid.spacing();
  bool rescaled = false;
  if (direction == Direction::outward) {
    detail::seed_outward(start, grid, u);
    rescaled = detail::sweep(k, h, u, start.first_node, grid.size() - 1, +1);
  } else {
    const std::size_t top = detail::tail_start(k, h, outer, detail::outer_turning_point(k));
    detail::seed_inward(k, h, outer, far_kappa_squared(problem, energy), top, u);
    rescaled = detail::sweep(k, h, u, top, 0, -1);
  }
  return NumerovResult{RadialSamples(grid, std::move(u)), rescaled};
}

}  // namespace radial_gate::solver
