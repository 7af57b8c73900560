#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "radial_gate/solver.hpp"

namespace radial_gate::solver::detail {

/// Potential and centrifugal terms tabulated once per (problem, grid).
class KTable {
 public:
  KTable(const RadialProblem& problem, const model::RadialGrid& grid);

  void fill(double energy, std::vector<double>& k) const;

 private:
  EquationKind kind_;
  double mass_;
  std::vector<double> potential_;
  std::vector<double> centrifugal_;
};

/// Numerov recurrence for u'' = -k u from index `from` (u[from] and
/// u[from + step] set) through `to` inclusive, step = +1 or -1.
/// Returns true when the overflow guard rescaled the computed values.
bool sweep(std::span<const double> k, double h, std::span<double> u, std::size_t from,
           std::size_t to, int step);

/// Fills u[0..first+1] from the Frobenius start.
void seed_outward(const FrobeniusStart& start, const model::RadialGrid& grid, std::span<double> u);

/// Decay depth, in units of int kappa dr, beyond which the decaying solution
/// is treated as zero.
inline constexpr double tail_depth = 50.0;

/// Index where an inward decaying sweep starts: the first node past `turning`
/// whose WKB depth exceeds tail_depth, or the last node. Walls use the last node.
std::size_t tail_start(std::span<const double> k, double h, OuterBoundary outer,
                       std::size_t turning);

/// Sets u[top] and u[top - 1] for an inward sweep.
void seed_inward(std::span<const double> k, double h, OuterBoundary outer, double far_kappa_sq,
                 std::size_t top, std::span<double> u);

/// Outermost index with k > 0, or 0 when there is none.
std::size_t outer_turning_point(std::span<const double> k);

}  // namespace radial_gate::solver::detail
