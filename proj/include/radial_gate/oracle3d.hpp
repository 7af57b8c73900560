#pragma once

#include <cstddef>
#include <vector>

#include "radial_gate/model.hpp"
#include "radial_gate/samples.hpp"

namespace radial_gate::oracle3d {

/// Cell-centred cube [-L, L]^3: x_i = (i + 1/2) h - L, h = 2L/n. No node
/// sits at the origin; zero boundary values live on the cube faces.
class CartesianGrid {
 public:
  CartesianGrid(double half_width, std::size_t n_per_axis);

  double half_width() const { return half_width_; }
  std::size_t n() const { return n_; }
  double spacing() const { return h_; }
  double x(std::size_t i) const { return (static_cast<double>(i) + 0.5) * h_ - half_width_; }
  std::size_t size() const { return n_ * n_ * n_; }

 private:
  double half_width_;
  std::size_t n_;
  double h_;
};

struct EigenOptions {
  double tolerance = 1e-8;       // on ||H psi - E psi|| / ||psi||
  std::size_t max_iterations = 500;
};

struct EigenResult {
  std::vector<double> eigenvalues;
  std::vector<double> residuals;
  std::size_t iterations = 0;
};

/// k <= 5 smallest eigenvalues of -Lap_h/(2m) + V (7-point stencil) by
/// preconditioned LOBPCG. Throws Error{no_convergence} at the iteration cap.
EigenResult lowest_eigenvalues_3d(const model::Potential& p, double mass,
                                  const CartesianGrid& grid, std::size_t k,
                                  const EigenOptions& options = {});

/// Sum over the 2x2x2 cells around the origin of
/// [Lap_h(u/r) - u''(r)/r] h^3, with u and u'' taken from the profile.
double point_defect_3d(const RadialSamples& u, const CartesianGrid& grid);

}  // namespace radial_gate::oracle3d
