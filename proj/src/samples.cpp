#include "radial_gate/samples.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "radial_gate/error.hpp"

namespace radial_gate {

RadialSamples::RadialSamples(model::RadialGrid g, std::vector<double> values)
    : grid(g), u(std::move(values)) {
  require(u.size() == grid.size(), "sample count does not match grid size");
}

RadialSamples RadialSamples::tabulate(const model::RadialGrid& g,
                                      const std::function<double(double)>& f) {
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.r(i));
  return RadialSamples(g, std::move(v));
}

double quadratic_extrapolate_to_zero(std::span<const double, 3> r, std::span<const double, 3> u) {
  double acc = 0.0;
  for (int i = 0; i < 3; ++i) {
    double w = 1.0;
    for (int j = 0; j < 3; ++j) {
      if (j != i) w *= (0.0 - r[j]) / (r[i] - r[j]);
    }
    acc += w * u[i];
  }
  return acc;
}

double RadialSamples::extrapolate_origin() const {
  const std::array<double, 3> r{grid.r(0), grid.r(1), grid.r(2)};
  const std::array<double, 3> v{u[0], u[1], u[2]};
  return quadratic_extrapolate_to_zero(r, v);
}

double RadialSamples::value(double r) const {
  if (r < grid.r_min()) {
    // quadratic through origin value and the two innermost nodes
    const double u0 = extrapolate_origin();
    const double r1 = grid.r(0);
    const double r2 = grid.r(1);
    return u0 * (r - r1) * (r - r2) / (r1 * r2) + u[0] * r * (r - r2) / (r1 * (r1 - r2)) +
           u[1] * r * (r - r1) / (r2 * (r2 - r1));
  }
  const double h = grid.spacing();
  const auto n = static_cast<long>(grid.size());
  long i = static_cast<long>(std::floor((r - grid.r_min()) / h));
  i = std::clamp(i - 1, 0L, n - 4);
  double acc = 0.0;
  for (long a = i; a < i + 4; ++a) {
    double w = 1.0;
    for (long b = i; b < i + 4; ++b) {
      if (b != a) w *= (r - grid.r(b)) / (grid.r(a) - grid.r(b));
    }
    acc += w * u[a];
  }
  return acc;
}

double RadialSamples::second_derivative(double r) const {
  const double h = grid.spacing();
  const auto n = static_cast<long>(grid.size());
  auto d2 = [&](long i) {
    i = std::clamp(i, 1L, n - 2);
    return (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h);
  };
  const double x = (r - grid.r_min()) / h;
  const long i = static_cast<long>(std::floor(x));
  if (i < 1) return d2(1);
  if (i >= n - 2) return d2(n - 2);
  const double t = x - static_cast<double>(i);
  return (1.0 - t) * d2(i) + t * d2(i + 1);
}

}  // namespace radial_gate
