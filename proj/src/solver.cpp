#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "radial_gate/error.hpp"
#include "radial_gate/parallel.hpp"
#include "shooting.hpp"

namespace radial_gate::solver {

namespace {

constexpr std::size_t matching_margin = 10;
constexpr int max_bisection_steps = 400;

int sign_changes(std::span<const double> u, std::size_t lo, std::size_t hi) {
  int n = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    if (u[i] * u[i + 1] < 0.0) ++n;
  }
  return n;
}

/// One (problem, grid, policy) shooting setup, reused across trial energies.
class Shooter {
 public:
  Shooter(const RadialProblem& problem, const model::RadialGrid& grid,
          const indicial::BoundaryPolicy& policy, OuterBoundary outer)
      : problem_(problem), grid_(grid), policy_(policy), outer_(outer), table_(problem, grid) {}

  struct Trace {
    std::vector<double> out;
    std::vector<double> in;
  };

  Shot shoot(double energy, Trace* trace = nullptr) const {
    const std::size_t n = grid_.size();
    const double h = grid_.spacing();
    std::vector<double> k;
    table_.fill(energy, k);
    const FrobeniusStart start = make_frobenius_start(problem_, energy, grid_, policy_);

    std::size_t m = detail::outer_turning_point(k);
    if (k[m] <= 0.0) m = static_cast<std::size_t>(std::max_element(k.begin(), k.end()) - k.begin());
    const std::size_t lo = std::max(matching_margin, start.first_node + 2);
    const std::size_t hi = n - 1 - matching_margin;
    m = std::clamp(m, lo, hi);

    Trace local;
    Trace& t = trace != nullptr ? *trace : local;
    t.out.assign(n, 0.0);
    t.in.assign(n, 0.0);
    detail::seed_outward(start, grid_, t.out);
    detail::sweep(k, h, t.out, start.first_node, m + 1, +1);
    const std::size_t top = std::max(detail::tail_start(k, h, outer_, m), m + 2);
    detail::seed_inward(k, h, outer_, far_kappa_squared(problem_, energy), top, t.in);
    detail::sweep(k, h, t.in, top, m, -1);

    const int n_out = sign_changes(t.out, 0, m);
    const int n_in = sign_changes(t.in, m, top);
    const double first = *std::find_if(t.out.begin(), t.out.end(), [](double v) { return v != 0.0; });
    const double s_out = (first > 0.0 ? 1.0 : -1.0) * (n_out % 2 == 0 ? 1.0 : -1.0);
    const double s_in = n_in % 2 == 0 ? 1.0 : -1.0;
    const double a_out = std::atan2(s_out * t.out[m], s_out * (t.out[m + 1] - t.out[m]));
    const double a_in = std::atan2(s_in * t.in[m], s_in * (t.in[m] - t.in[m + 1]));

    Shot shot;
    shot.nodes = n_out + n_in;
    shot.phase = (n_out + n_in - 1) * std::numbers::pi + a_out + a_in;
    shot.matching_index = m;
    return shot;
  }

  int count_below(double energy) const {
    const double c = std::ceil(shoot(energy).phase / std::numbers::pi);
    return std::max(0, static_cast<int>(c));
  }

 private:
  const RadialProblem& problem_;
  const model::RadialGrid& grid_;
  const indicial::BoundaryPolicy& policy_;
  OuterBoundary outer_;
  detail::KTable table_;
};

void check_exponents(const RadialProblem& problem) {
  const auto report = problem_exponents(problem);
  if (report.fall_to_center) {
    if (problem.kind == EquationKind::klein_gordon) {
      fail(ErrorCode::kg_fall_to_center, "Klein-Gordon fall to center: alpha >= l + 1/2");
    }
    fail(ErrorCode::fall_to_center, "fall to center: 2 m v0 > (l + 1/2)^2, no ground state");
  }
}

}  // namespace

Shot shoot(const RadialProblem& problem, double energy, const model::RadialGrid& grid,
           const indicial::BoundaryPolicy& policy, OuterBoundary outer) {
  return Shooter(problem, grid, policy, outer).shoot(energy);
}

int count_below(const RadialProblem& problem, double energy, const model::RadialGrid& grid,
                const indicial::BoundaryPolicy& policy, OuterBoundary outer) {
  return Shooter(problem, grid, policy, outer).count_below(energy);
}

Spectrum bound_states(const RadialProblem& problem, const indicial::BoundaryPolicy& policy,
                      EnergyWindow window, std::size_t k_max, const model::RadialGrid& grid,
                      std::optional<OuterBoundary> outer) {
  model::validate(problem.potential);
  indicial::validate(policy);
  require(problem.l >= 0, "orbital quantum number l must be >= 0");
  require(problem.mass > 0.0, "mass must be > 0");
  require(std::isfinite(window.lo) && std::isfinite(window.hi) && window.lo < window.hi,
          "energy window must satisfy lo < hi");
  require(k_max >= 1, "k_max must be >= 1");
  check_exponents(problem);

  Spectrum spectrum;
  spectrum.policy = policy;
  spectrum.problem = problem;
  spectrum.grid = grid;
  spectrum.outer = outer.value_or(default_outer_boundary(problem.potential));

  const Shooter shooter(problem, grid, policy, spectrum.outer);
  std::vector<double> energies(prescan_points + 1);
  std::vector<int> counts(prescan_points + 1);
  for (std::size_t i = 0; i <= prescan_points; ++i) {
    energies[i] = window.lo + (window.hi - window.lo) * static_cast<double>(i) /
                                  static_cast<double>(prescan_points);
  }
  energies.back() = window.hi;
  parallel_for(energies.size(), [&](std::size_t i) { counts[i] = shooter.count_below(energies[i]); });

  const int c_lo = counts.front();
  const int c_hi = counts.back();
  if (c_hi <= c_lo) {
    fail(ErrorCode::window_empty, "no eigenvalue inside the energy window [" +
                                      std::to_string(window.lo) + ", " +
                                      std::to_string(window.hi) + "]");
  }
  const int last = std::min<int>(c_hi, c_lo + static_cast<int>(k_max));
  for (int level = c_lo; level < last; ++level) {
    std::size_t i = 0;
    while (counts[i + 1] <= level) ++i;
    double a = energies[i];
    double b = energies[i + 1];
    bool converged = false;
    for (int step = 0; step < max_bisection_steps; ++step) {
      const double mid = 0.5 * (a + b);
      if (b - a <= relative_bisection_width * std::max(1.0, std::abs(mid))) {
        converged = true;
        break;
      }
      if (shooter.count_below(mid) > level) {
        b = mid;
      } else {
        a = mid;
      }
    }
    SpectrumEntry entry;
    entry.energy = 0.5 * (a + b);
    entry.bisection_width = b - a;
    entry.converged = converged;
    entry.node_count = shooter.shoot(entry.energy).nodes;
    spectrum.entries.push_back(entry);
  }
  return spectrum;
}

Spectrum bound_states(const model::Potential& p, int l, double mass,
                      const indicial::BoundaryPolicy& policy, EnergyWindow window,
                      std::size_t k_max, const model::RadialGrid& grid,
                      std::optional<OuterBoundary> outer) {
  return bound_states(RadialProblem{p, l, mass, EquationKind::schrodinger}, policy, window, k_max,
                      grid, outer);
}

RadialSamples eigenfunction(const Spectrum& spectrum, std::size_t k) {
  require(k < spectrum.entries.size(), "eigenfunction index out of range");
  const Shooter shooter(spectrum.problem, spectrum.grid, spectrum.policy, spectrum.outer);
  Shooter::Trace trace;
  const Shot shot = shooter.shoot(spectrum.entries[k].energy, &trace);
  const std::size_t m = shot.matching_index;
  const double num = trace.out[m] * trace.in[m] + trace.out[m + 1] * trace.in[m + 1];
  const double den = trace.in[m] * trace.in[m] + trace.in[m + 1] * trace.in[m + 1];
  const double scale = den > 0.0 ? num / den : 0.0;

  std::vector<double> u(spectrum.grid.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = i <= m ? trace.out[i] : scale * trace.in[i];

  const double h = spectrum.grid.spacing();
  double norm = 0.0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) norm += 0.5 * h * (u[i] * u[i] + u[i + 1] * u[i + 1]);
  double factor = norm > 0.0 ? 1.0 / std::sqrt(norm) : 1.0;
  const auto first = std::find_if(u.begin(), u.end(), [](double v) { return v != 0.0; });
  if (first != u.end() && *first < 0.0) factor = -factor;
  for (double& v : u) v *= factor;
  return RadialSamples(spectrum.grid, std::move(u));
}

std::vector<Spectrum> policy_contrast(const model::Potential& p, int l, double mass,
                                      std::span<const double> thetas,
                                      const model::RadialGrid& grid, EnergyWindow window,
                                      std::size_t k_max, double r_ref) {
  const RadialProblem problem{p, l, mass, EquationKind::schrodinger};
  require(std::holds_alternative<model::InverseSquare>(p) ||
              std::holds_alternative<model::RegularizedInverseSquare>(p),
          "policy contrast takes an inverse-square or regularized inverse-square potential");
  check_exponents(problem);
  const auto report =
      indicial::admissibility(problem_exponents(problem), indicial::SquareIntegrableOnly{0.0, r_ref});
  require(report.s_minus && report.minus_flags->square_integrable,
          "policy contrast needs two square-integrable branches (0 < P < 1)");

  std::vector<Spectrum> out;
  out.push_back(bound_states(problem, indicial::DirichletOrigin{}, window, k_max, grid));
  for (double theta : thetas) {
    out.push_back(
        bound_states(problem, indicial::SquareIntegrableOnly{theta, r_ref}, window, k_max, grid));
  }
  return out;
}

Spectrum kg_bound_states(const model::Coulomb& c, int l, double mass,
                         const indicial::BoundaryPolicy& policy, EnergyWindow window,
                         std::size_t k_max, const model::RadialGrid& grid) {
  require(l >= 0, "orbital quantum number l must be >= 0");
  if (std::abs(c.alpha) >= l + 0.5) {
    fail(ErrorCode::kg_fall_to_center, "Klein-Gordon fall to center: alpha = " +
                                           std::to_string(c.alpha) + " >= l + 1/2");
  }
  require(window.lo >= 0.0 && window.hi <= mass,
          "Klein-Gordon energy window must lie inside [0, m]");
  return bound_states(RadialProblem{c, l, mass, EquationKind::klein_gordon}, policy, window, k_max,
                      grid, OuterBoundary::decaying);
}

SlopeFit origin_slope_fit(const RadialSamples& samples, double r_a, double r_b) {
  require(0.0 < r_a && r_a < r_b, "fit window must satisfy 0 < r_a < r_b");
  std::vector<double> x;
  std::vector<double> y;
  int sign = 0;
  for (std::size_t i = 0; i < samples.grid.size(); ++i) {
    const double r = samples.grid.r(i);
    if (r < r_a || r > r_b) continue;
    const double v = samples.u[i];
    const int s = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
    if (s == 0 || (sign != 0 && s != sign)) {
      fail(ErrorCode::non_positive_samples, "u vanishes or changes sign inside the fit window");
    }
    sign = s;
    x.push_back(std::log(r));
    y.push_back(std::log(std::abs(v)));
  }
  require(x.size() >= 3, "fit window holds fewer than three grid nodes");

  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - my - slope * (x[i] - mx);
    ssr += e * e;
  }
  SlopeFit fit;
  fit.exponent = slope;
  fit.standard_error = std::sqrt(ssr / (n - 2.0) / sxx);
  fit.points = x.size();
  return fit;
}

}  // namespace radial_gate::solver
