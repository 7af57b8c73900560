#pragma once

#include <optional>
#include <variant>

#include "radial_gate/model.hpp"

namespace radial_gate::indicial {

/// u(0) = 0. Inside the range where both branches vanish at the origin the
/// solver takes the dominant branch unless `theta` overrides it.
struct DirichletOrigin {
  std::optional<double> theta;
  double r_ref = 1.0;

  bool operator==(const DirichletOrigin&) const = default;
};

/// Only square integrability is imposed; the two branches are mixed as
/// cos(theta) r^{s+} + sin(theta) (r/r_ref)^{s-} r_ref^{s+}.
struct SquareIntegrableOnly {
  double theta = 0.0;
  double r_ref = 1.0;

  bool operator==(const SquareIntegrableOnly&) const = default;
};

using BoundaryPolicy = std::variant<DirichletOrigin, SquareIntegrableOnly>;

/// theta in [0, pi), r_ref > 0.
void validate(const BoundaryPolicy& policy);

struct ExponentFlags {
  bool square_integrable = false;
  bool vanishes_at_origin = false;
  bool admissible = false;

  bool operator==(const ExponentFlags&) const = default;
};

struct IndicialReport {
  model::OriginClass origin;
  int l = 0;
  double mass = 1.0;
  bool fall_to_center = false;
  bool degenerate = false;            // P = 0: single exponent 1/2
  std::optional<double> s_plus;
  std::optional<double> s_minus;      // absent when degenerate or falling to center
  std::optional<double> p_value;      // transitive-singular only
  std::optional<BoundaryPolicy> policy;
  std::optional<ExponentFlags> plus_flags;
  std::optional<ExponentFlags> minus_flags;
  std::optional<bool> ambiguous;

  bool operator==(const IndicialReport&) const = default;
};

/// Roots of s(s-1) = l(l+1) - 2 m v0 (v0 = 0 for regular potentials).
/// Throws Error{strongly_singular_unsupported} for StronglySingular.
IndicialReport indicial_exponents(const model::OriginClass& origin, int l, double mass);

bool square_integrable(double s);
bool vanishes_at_origin(double s);
bool admissible(double s, const BoundaryPolicy& policy);

/// Fills the per-exponent flags and `ambiguous`. Throws Error{fall_to_center}
/// if the report has no real exponents.
IndicialReport admissibility(IndicialReport report, const BoundaryPolicy& policy);

}  // namespace radial_gate::indicial
