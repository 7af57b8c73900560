#pragma once

#include <variant>

#include "radial_gate/samples.hpp"

namespace radial_gate::deltaprobe {

/// How the 3D delta is reduced to the radial line. The default,
/// delta(r)/(4 pi r^2), gives a point defect of -4 pi u(0). The alternative
/// delta(r)/(2 pi r^2), read with a full-weight endpoint delta, doubles it.
enum class DeltaConvention { quarter_pi, half_pi };

struct ResidualReport {
  double probe_radius = 0.0;
  double integral = 0.0;
  double predicted = 0.0;
  double relative_error = 0.0;
  double grid_spacing = 0.0;
  double u_origin = 0.0;  // extrapolated u(0)

  bool operator==(const ResidualReport&) const = default;
};

/// Small-sphere integral of Delta_r(u/r) - u''/r over the ball of radius a,
/// in flux form:
///   4 pi [ a^2 (u/r)'(a) - int_0^a u''(r) r dr ].
/// `a` is snapped to the nearest grid node. Throws Error{grid_too_coarse}
/// when a < 4h.
ResidualReport numeric_delta_residual(const RadialSamples& u, double a,
                                      DeltaConvention convention = DeltaConvention::quarter_pi);

/// max over nodes r >= r_low of |Delta_r(u/r) - u''/r| by central differences.
/// Delta_r f is taken in flux form (r^2 f')'/r^2 with half-node radii; u'' is
/// the three-point second difference.
/// Requires r_low >= r_min + 2h.
double identity_defect_away_from_origin(const RadialSamples& u, double r_low);

struct Zero {
  bool operator==(const Zero&) const = default;
};
struct Finite {
  double value = 0.0;
  bool operator==(const Finite&) const = default;
};
struct Infinite {
  bool operator==(const Infinite&) const = default;
};
using LimitClass = std::variant<Zero, Finite, Infinite>;

/// Leading behaviour near the origin: u ~ r^s, V ~ g / r^n.
struct OriginAsymptotics {
  double s = 1.0;
  int l = 0;
  double n = 0.0;
  double g = 0.0;
  double mass = 1.0;
  double energy = 0.0;
};

struct OriginLimit {
  double value_at_a = 0.0;
  LimitClass classification;
};

/// Evaluates
///   (s(s-1) - l(l+1))/s a^s + 2mE/(s+2) a^{s+2} - 2mg/(s+2-n) a^{s+2-n}
/// and classifies its a -> 0 limit from the surviving terms. Zero
/// denominators are the logarithmic cases and throw Error{log_case}, except
/// s = 0 with l = 0 and g = 0, which is Finite.
OriginLimit asymptotic_origin_limit(const OriginAsymptotics& params, double a);

/// n - 2: u(0) vanishes only for s strictly above it.
double min_exponent_bound(double n);

}  // namespace radial_gate::deltaprobe
