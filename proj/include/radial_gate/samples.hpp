#pragma once

#include <functional>
#include <span>
#include <vector>

#include "radial_gate/model.hpp"

namespace radial_gate {

/// A function sampled on a uniform radial grid.
struct RadialSamples {
  model::RadialGrid grid;
  std::vector<double> u;

  RadialSamples(model::RadialGrid g, std::vector<double> values);

  static RadialSamples tabulate(const model::RadialGrid& g, const std::function<double(double)>& f);

  /// Quadratic extrapolation through the three innermost nodes to r = 0.
  double extrapolate_origin() const;

  /// Four-point Lagrange interpolation; below r_min the origin extrapolant is used.
  double value(double r) const;

  /// Second central difference at the nodes, linearly interpolated.
  double second_derivative(double r) const;
};

/// Value at r = 0 of the quadratic through (r[k], u[k]), k = 0..2.
double quadratic_extrapolate_to_zero(std::span<const double, 3> r, std::span<const double, 3> u);

}  // namespace radial_gate
