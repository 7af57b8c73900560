#include "radial_gate/oracle3d.hpp"

#include <fftw3.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "radial_gate/error.hpp"
#include "radial_gate/parallel.hpp"

namespace radial_gate::oracle3d {

CartesianGrid::CartesianGrid(double half_width, std::size_t n_per_axis)
    : half_width_(half_width), n_(n_per_axis), h_(0.0) {
  require(std::isfinite(half_width) && half_width > 0.0, "box half-width L must be > 0");
  require(n_per_axis >= 16, "3D grid needs at least 16 nodes per axis");
  require(n_per_axis % 2 == 0, "3D grid needs an even node count per axis");
  h_ = 2.0 * half_width_ / static_cast<double>(n_);
}

namespace {

using Block = Eigen::MatrixXd;

/// -Lap_h / (2m) + V with zero values on the cube faces (ghost = -edge).
class Hamiltonian {
 public:
  Hamiltonian(const model::Potential& p, double mass, const CartesianGrid& grid)
      : n_(grid.n()), kinetic_(1.0 / (2.0 * mass * grid.spacing() * grid.spacing())) {
    potential_.resize(grid.size());
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        for (std::size_t k = 0; k < n_; ++k) {
          const double r =
              std::sqrt(grid.x(i) * grid.x(i) + grid.x(j) * grid.x(j) + grid.x(k) * grid.x(k));
          potential_[index(i, j, k)] = model::evaluate_potential(p, r, mass);
        }
      }
    }
  }

  std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
    return (i * n_ + j) * n_ + k;
  }

  void apply(const double* in, double* out) const {
    const std::size_t n = n_;
    parallel_for(n, [&](std::size_t i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          const std::size_t c = index(i, j, k);
          const double v = in[c];
          double sum = 0.0;
          sum += i > 0 ? in[c - n * n] : -v;
          sum += i + 1 < n ? in[c + n * n] : -v;
          sum += j > 0 ? in[c - n] : -v;
          sum += j + 1 < n ? in[c + n] : -v;
          sum += k > 0 ? in[c - 1] : -v;
          sum += k + 1 < n ? in[c + 1] : -v;
          out[c] = -kinetic_ * (sum - 6.0 * v) + potential_[c] * v;
        }
      }
    });
  }

  Block apply(const Block& x) const {
    Block y(x.rows(), x.cols());
    for (Eigen::Index c = 0; c < x.cols(); ++c) apply(x.col(c).data(), y.col(c).data());
    return y;
  }

 private:
  std::size_t n_;
  double kinetic_;
  std::vector<double> potential_;
};

/// (-Lap_h/(2m) + shift)^{-1}, exact through the type-II sine transform that
/// diagonalizes the cell-centred Dirichlet Laplacian.
class SinePreconditioner {
 public:
  SinePreconditioner(const CartesianGrid& grid, double mass)
      : n_(grid.n()), buffer_(fftw_alloc_real(grid.size())) {
    const int n = static_cast<int>(n_);
    forward_ = fftw_plan_r2r_3d(n, n, n, buffer_, buffer_, FFTW_RODFT10, FFTW_RODFT10,
                                FFTW_RODFT10, FFTW_ESTIMATE);
    backward_ = fftw_plan_r2r_3d(n, n, n, buffer_, buffer_, FFTW_RODFT01, FFTW_RODFT01,
                                 FFTW_RODFT01, FFTW_ESTIMATE);
    const double h = grid.spacing();
    mode_.resize(n_);
    for (std::size_t a = 0; a < n_; ++a) {
      const double theta = std::numbers::pi * static_cast<double>(a + 1) / static_cast<double>(n_);
      mode_[a] = (2.0 / (h * h)) * (1.0 - std::cos(theta)) / (2.0 * mass);
    }
  }

  ~SinePreconditioner() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(buffer_);
  }

  SinePreconditioner(const SinePreconditioner&) = delete;
  SinePreconditioner& operator=(const SinePreconditioner&) = delete;

  double lowest_mode() const { return 3.0 * mode_[0]; }

  void set_shift(double shift) { shift_ = shift; }

  Block apply(const Block& x) {
    Block y(x.rows(), x.cols());
    const double norm = 1.0 / std::pow(2.0 * static_cast<double>(n_), 3);
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      std::copy(x.col(c).data(), x.col(c).data() + x.rows(), buffer_);
      fftw_execute(forward_);
      for (std::size_t a = 0; a < n_; ++a) {
        for (std::size_t b = 0; b < n_; ++b) {
          for (std::size_t d = 0; d < n_; ++d) {
            buffer_[(a * n_ + b) * n_ + d] *= norm / (mode_[a] + mode_[b] + mode_[d] + shift_);
          }
        }
      }
      fftw_execute(backward_);
      std::copy(buffer_, buffer_ + x.rows(), y.col(c).data());
    }
    return y;
  }

 private:
  std::size_t n_;
  double* buffer_;
  fftw_plan forward_;
  fftw_plan backward_;
  std::vector<double> mode_;
  double shift_ = 1.0;
};

Block orthonormal_basis(const Block& s) {
  Eigen::HouseholderQR<Block> qr(s);
  return qr.householderQ() * Block::Identity(s.rows(), s.cols());
}

}  // namespace

EigenResult lowest_eigenvalues_3d(const model::Potential& p, double mass,
                                  const CartesianGrid& grid, std::size_t k,
                                  const EigenOptions& options) {
  model::validate(p);
  require(mass > 0.0, "mass must be > 0");
  require(k >= 1 && k <= 5, "3D oracle computes between 1 and 5 eigenvalues");

  const Hamiltonian ham(p, mass, grid);
  SinePreconditioner precond(grid, mass);
  const auto rows = static_cast<Eigen::Index>(grid.size());
  const auto block = static_cast<Eigen::Index>(k + 2);

  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Block x(rows, block);
  for (Eigen::Index c = 0; c < block; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) x(r, c) = dist(rng);
  }
  precond.set_shift(precond.lowest_mode());
  x = orthonormal_basis(precond.apply(x));

  Block hx = ham.apply(x);
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rr(x.transpose() * hx);
    x = x * rr.eigenvectors();
    hx = hx * rr.eigenvectors();
  }
  Eigen::VectorXd theta = (x.transpose() * hx).diagonal();
  precond.set_shift(std::max(precond.lowest_mode(), std::abs(theta(0))));

  Block search;  // previous step direction
  EigenResult result;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    const Block residual = hx - x * theta.asDiagonal();
    bool done = true;
    for (std::size_t j = 0; j < k; ++j) {
      if (residual.col(static_cast<Eigen::Index>(j)).norm() > options.tolerance) done = false;
    }
    if (done) {
      result.iterations = it;
      for (std::size_t j = 0; j < k; ++j) {
        result.eigenvalues.push_back(theta(static_cast<Eigen::Index>(j)));
        result.residuals.push_back(residual.col(static_cast<Eigen::Index>(j)).norm());
      }
      return result;
    }

    const Block w = precond.apply(residual);
    Block s(rows, x.cols() + w.cols() + search.cols());
    s.leftCols(x.cols()) = x;
    s.middleCols(x.cols(), w.cols()) = w;
    if (search.cols() > 0) s.rightCols(search.cols()) = search;
    const Block q = orthonormal_basis(s);
    const Block hq = ham.apply(q);
    Eigen::MatrixXd g = q.transpose() * hq;
    g = 0.5 * (g + g.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> rr(g);
    const Eigen::MatrixXd c = rr.eigenvectors().leftCols(block);

    const Block x_new = q * c;
    search = x_new - x * (x.transpose() * x_new);
    x = x_new;
    hx = hq * c;
    theta = rr.eigenvalues().head(block);
  }
  fail(ErrorCode::no_convergence, "3D eigensolver did not reach the residual tolerance within " +
                                      std::to_string(options.max_iterations) + " iterations");
}

double point_defect_3d(const RadialSamples& u, const CartesianGrid& grid) {
  const double h = grid.spacing();
  const std::size_t lo = grid.n() / 2 - 1;
  auto radius = [&](long i, long j, long k) {
    const double x = grid.x(static_cast<std::size_t>(i));
    const double y = grid.x(static_cast<std::size_t>(j));
    const double z = grid.x(static_cast<std::size_t>(k));
    return std::sqrt(x * x + y * y + z * z);
  };
  require(radius(lo - 1, lo, lo) <= u.grid.r_max(), "radial profile does not cover the stencil");
  auto psi = [&](long i, long j, long k) {
    const double r = radius(i, j, k);
    return u.value(r) / r;
  };

  double total = 0.0;
  for (long i = lo; i <= static_cast<long>(lo) + 1; ++i) {
    for (long j = lo; j <= static_cast<long>(lo) + 1; ++j) {
      for (long k = lo; k <= static_cast<long>(lo) + 1; ++k) {
        const double c = psi(i, j, k);
        const double lap = (psi(i - 1, j, k) + psi(i + 1, j, k) + psi(i, j - 1, k) +
                            psi(i, j + 1, k) + psi(i, j, k - 1) + psi(i, j, k + 1) - 6.0 * c) /
                           (h * h);
        const double r = radius(i, j, k);
        total += (lap - u.second_derivative(r) / r) * h * h * h;
      }
    }
  }
  return total;
}

}  // namespace radial_gate::oracle3d
