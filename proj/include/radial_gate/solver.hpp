#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "radial_gate/indicial.hpp"
#include "radial_gate/model.hpp"
#include "radial_gate/samples.hpp"

namespace radial_gate::solver {

enum class EquationKind { schrodinger, klein_gordon };

/// Radial equation u'' = -k(r, E) u with
///   Schrodinger:  k = 2m(E - V) - l(l+1)/r^2
///   Klein-Gordon: k = (E - V)^2 - m^2 - l(l+1)/r^2
struct RadialProblem {
  model::Potential potential;
  int l = 0;
  double mass = 1.0;
  EquationKind kind = EquationKind::schrodinger;

  double k(double r, double energy) const;

  bool operator==(const RadialProblem&) const = default;
};

/// Near-origin form u'' = [L/r^2 + q1/r + q2 + q3 r + q4 r^2] u. `series`
/// is false when the potential has a non-integer power and only the leading
/// Frobenius term is used.
struct OriginExpansion {
  double inverse_square = 0.0;
  std::array<double, 4> q{};
  bool series = true;
};

/// Throws Error{strongly_singular_unsupported} for n > 2 power laws.
OriginExpansion origin_expansion(const RadialProblem& problem, double energy,
                                 const model::RadialGrid& grid);

/// Indicial exponents of the problem (Klein-Gordon uses l(l+1) - alpha^2).
indicial::IndicialReport problem_exponents(const RadialProblem& problem);

/// Frobenius series r^s (1 + c1 r + c2 r^2 + ...) truncated before the first
/// resonance.
std::vector<double> frobenius_coefficients(const OriginExpansion& e, double s,
                                           std::size_t max_terms = 10);

/// Start data for the outward sweep. u(r) = c1 r^{s+} S+(r)
///   + c2 (r / r_ref)^{s-} r_ref^{s+} S-(r), S the series factors.
struct FrobeniusStart {
  double s_plus = 1.0;
  std::optional<double> s_minus;
  double c1 = 1.0;
  double c2 = 0.0;
  double r_ref = 1.0;
  std::vector<double> series_plus;
  std::vector<double> series_minus;
  /// Index of the first Numerov node; nodes 0..first+1 carry series values.
  std::size_t first_node = 0;

  double value(double r) const;
};

/// Branch weights follow the policy: Dirichlet takes the dominant branch
/// unless it carries an explicit angle inside the ambiguous range. Throws
/// Error{domain_error} if a weighted branch is inadmissible under the policy.
FrobeniusStart make_frobenius_start(const RadialProblem& problem, double energy,
                                    const model::RadialGrid& grid,
                                    const indicial::BoundaryPolicy& policy);

enum class Direction { outward, inward };

/// decaying: exp(-int kappa) tail at r_max; wall: u(r_max) = 0.
enum class OuterBoundary { decaying, wall };

/// kappa^2 of the decaying tail far from the origin: -2mE, or m^2 - E^2 for
/// Klein-Gordon.
double far_kappa_squared(const RadialProblem& problem, double energy);

/// Pure inverse-square has no scale of its own; it is solved in a box.
OuterBoundary default_outer_boundary(const model::Potential& p);

struct NumerovResult {
  RadialSamples samples;
  bool rescaled = false;  // overflow guard renormalized the solution
};

/// Fourth-order Numerov sweep across the whole grid. Outward uses `start`;
/// inward starts from the outer boundary. Throws Error{non_decaying_tail} for
/// an inward decaying start at an energy with no decaying tail.
NumerovResult numerov_integrate(const RadialProblem& problem, double energy,
                                const model::RadialGrid& grid, const FrobeniusStart& start,
                                Direction direction,
                                OuterBoundary outer = OuterBoundary::decaying);

struct SpectrumEntry {
  double energy = 0.0;
  int node_count = 0;
  bool converged = false;
  double bisection_width = 0.0;

  bool operator==(const SpectrumEntry&) const = default;
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;
  indicial::BoundaryPolicy policy;
  RadialProblem problem;
  model::RadialGrid grid{1.0, 2.0, 16};
  OuterBoundary outer = OuterBoundary::decaying;

  bool operator==(const Spectrum&) const = default;
};

struct EnergyWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// Shooting result at one trial energy.
struct Shot {
  double phase = 0.0;  // continuous mismatch angle; level j sits at phase = j pi
  int nodes = 0;
  std::size_t matching_index = 0;
};

Shot shoot(const RadialProblem& problem, double energy, const model::RadialGrid& grid,
           const indicial::BoundaryPolicy& policy, OuterBoundary outer);

/// Number of eigenvalues below `energy`.
int count_below(const RadialProblem& problem, double energy, const model::RadialGrid& grid,
                const indicial::BoundaryPolicy& policy, OuterBoundary outer);

inline constexpr std::size_t prescan_points = 256;
inline constexpr double relative_bisection_width = 1e-10;

/// Up to k_max eigenvalues inside the window, in increasing order. Throws
/// Error{window_empty} when no level lies inside, Error{fall_to_center} when
/// the exponents are complex.
Spectrum bound_states(const RadialProblem& problem, const indicial::BoundaryPolicy& policy,
                      EnergyWindow window, std::size_t k_max, const model::RadialGrid& grid,
                      std::optional<OuterBoundary> outer = std::nullopt);

Spectrum bound_states(const model::Potential& p, int l, double mass,
                      const indicial::BoundaryPolicy& policy, EnergyWindow window,
                      std::size_t k_max, const model::RadialGrid& grid,
                      std::optional<OuterBoundary> outer = std::nullopt);

/// Normalized eigenfunction of entry k (outward and inward pieces joined at
/// the matching point, int u^2 dr = 1, positive near the origin).
RadialSamples eigenfunction(const Spectrum& spectrum, std::size_t k);

/// Dirichlet reference first, then SquareIntegrableOnly for each theta.
/// Requires both origin branches to be square integrable.
std::vector<Spectrum> policy_contrast(const model::Potential& p, int l, double mass,
                                      std::span<const double> thetas,
                                      const model::RadialGrid& grid, EnergyWindow window,
                                      std::size_t k_max = 1, double r_ref = 1.0);

/// Klein-Gordon levels for a Coulomb potential, window inside [0, m].
/// Throws Error{kg_fall_to_center} when alpha >= l + 1/2.
Spectrum kg_bound_states(const model::Coulomb& c, int l, double mass,
                         const indicial::BoundaryPolicy& policy, EnergyWindow window,
                         std::size_t k_max, const model::RadialGrid& grid);

struct SlopeFit {
  double exponent = 0.0;
  double standard_error = 0.0;
  std::size_t points = 0;
};

/// Least-squares slope of log|u| against log r over nodes in [r_a, r_b].
/// Throws Error{non_positive_samples} if u vanishes or changes sign there.
SlopeFit origin_slope_fit(const RadialSamples& u, double r_a, double r_b);

}  // namespace radial_gate::solver
