#include "radial_gate/deltaprobe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "radial_gate/error.hpp"

namespace radial_gate::deltaprobe {

namespace {

constexpr double four_pi = 4.0 * std::numbers::pi;

}  // namespace

ResidualReport numeric_delta_residual(const RadialSamples& samples, double a,
                                      DeltaConvention convention) {
  const auto& grid = samples.grid;
  const auto& u = samples.u;
  const double h = grid.spacing();
  if (!(a >= 4.0 * h)) {
    fail(ErrorCode::grid_too_coarse, "probe radius " + std::to_string(a) +
                                         " is below 4 grid spacings (h = " + std::to_string(h) +
                                         ")");
  }
  const long n = static_cast<long>(grid.size());
  const long ia = std::lround((a - grid.r_min()) / h);
  if (ia < 2) {
    fail(ErrorCode::grid_too_coarse, "probe radius does not reach two interior grid nodes");
  }
  require(ia <= n - 2, "probe radius lies beyond the grid");

  const double r_a = grid.r(ia);
  auto f = [&](long i) { return u[i] / grid.r(i); };
  const double flux = r_a * r_a * (f(ia + 1) - f(ia - 1)) / (2.0 * h);

  auto integrand = [&](long i) {
    const double d2 = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
    return d2 * grid.r(i);
  };
  // [0, r_1]: integrand vanishes at the origin
  double volume = 0.5 * grid.r(1) * integrand(1);
  for (long i = 1; i < ia; ++i) volume += 0.5 * h * (integrand(i) + integrand(i + 1));

  ResidualReport report;
  report.probe_radius = r_a;
  report.grid_spacing = h;
  report.integral = four_pi * (flux - volume);
  report.u_origin = samples.extrapolate_origin();
  const double weight = convention == DeltaConvention::quarter_pi ? 1.0 : 2.0;
  report.predicted = -four_pi * weight * report.u_origin;
  report.relative_error =
      std::abs(report.integral - report.predicted) / std::max(std::abs(report.predicted), 1e-300);
  return report;
}

double identity_defect_away_from_origin(const RadialSamples& samples, double r_low) {
  const auto& grid = samples.grid;
  const auto& u = samples.u;
  const double h = grid.spacing();
  require(r_low >= grid.r_min() + 2.0 * h - 1e-12 * h,
          "r_low must be at least two grid spacings above r_min");
  const long n = static_cast<long>(grid.size());
  const long first = std::max(2L, static_cast<long>(std::ceil((r_low - grid.r_min()) / h - 1e-9)));
  require(first <= n - 2, "r_low lies beyond the grid");

  auto f = [&](long i) { return u[i] / grid.r(i); };
  double worst = 0.0;
  for (long i = first; i <= n - 2; ++i) {
    const double r = grid.r(i);
    const double r_up = r + 0.5 * h;
    const double r_dn = r - 0.5 * h;
    const double lap =
        (r_up * r_up * (f(i + 1) - f(i)) - r_dn * r_dn * (f(i) - f(i - 1))) / (h * h * r * r);
    const double reduced = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h * r);
    worst = std::max(worst, std::abs(lap - reduced));
  }
  return worst;
}

OriginLimit asymptotic_origin_limit(const OriginAsymptotics& p, double a) {
  require(std::isfinite(p.s) && std::isfinite(p.n) && std::isfinite(p.g) &&
              std::isfinite(p.energy),
          "asymptotic parameters must be finite");
  require(a > 0.0, "radius a must be > 0");
  require(p.l >= 0, "orbital quantum number l must be >= 0");
  require(p.mass > 0.0, "mass must be > 0");

  const double ll = static_cast<double>(p.l) * (p.l + 1);
  struct Term {
    double coefficient;
    double exponent;
  };
  std::vector<Term> terms;

  if (p.s == 0.0) {
    if (p.l != 0 || p.g != 0.0) {
      fail(ErrorCode::log_case,
           "DegenerateDenominator: s = 0 gives a logarithmic antiderivative");
    }
    terms.push_back({-1.0, 0.0});  // s(s-1)/s -> s - 1
  } else {
    terms.push_back({(p.s * (p.s - 1.0) - ll) / p.s, p.s});
  }

  if (p.energy != 0.0) {
    if (p.s + 2.0 == 0.0) {
      fail(ErrorCode::log_case, "DegenerateDenominator: s + 2 = 0 gives a logarithmic energy term");
    }
    terms.push_back({2.0 * p.mass * p.energy / (p.s + 2.0), p.s + 2.0});
  }

  if (p.g != 0.0) {
    const double e = p.s + 2.0 - p.n;
    if (e == 0.0) {
      fail(ErrorCode::log_case,
           "DegenerateDenominator: s + 2 - n = 0 gives a logarithmic potential term");
    }
    terms.push_back({-2.0 * p.mass * p.g / e, e});
  }

  OriginLimit out;
  bool any_negative = false;
  bool any_zero = false;
  double finite_value = 0.0;
  for (const auto& t : terms) {
    out.value_at_a += t.coefficient * std::pow(a, t.exponent);
    if (t.coefficient == 0.0) continue;
    if (t.exponent < 0.0) any_negative = true;
    if (t.exponent == 0.0) {
      any_zero = true;
      finite_value += t.coefficient;
    }
  }
  if (any_negative) {
    out.classification = Infinite{};
  } else if (any_zero) {
    out.classification = Finite{finite_value};
  } else {
    out.classification = Zero{};
  }
  return out;
}

double min_exponent_bound(double n) {
  require(n >= 0.0, "potential exponent n must be >= 0");
  return n - 2.0;
}

}  // namespace radial_gate::deltaprobe
