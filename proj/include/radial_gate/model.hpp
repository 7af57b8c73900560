#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

namespace radial_gate::model {

// Units: hbar = 1. Mass is passed explicitly wherever it matters.

/// V(r) = -alpha / r
struct Coulomb {
  double alpha = 1.0;

  bool operator==(const Coulomb&) const = default;
};

/// V(r) = -v0 / r^2. Positive v0 is attractive; negative v0 is the repulsive
/// inverse-square case.
struct InverseSquare {
  double v0 = 0.0;

  bool operator==(const InverseSquare&) const = default;
};

/// V(r) = g / r^n, n > 0.
struct PowerLaw {
  double g = 0.0;
  double n = 1.0;

  bool operator==(const PowerLaw&) const = default;
};

/// V(r) = m omega^2 r^2 / 2
struct Harmonic {
  double omega = 1.0;

  bool operator==(const Harmonic&) const = default;
};

/// -v0 / r^2 outside r_core, flat at -v0 / r_core^2 inside.
struct RegularizedInverseSquare {
  double v0 = 0.0;
  double r_core = 1.0;

  bool operator==(const RegularizedInverseSquare&) const = default;
};

using Potential =
    std::variant<Coulomb, InverseSquare, PowerLaw, Harmonic, RegularizedInverseSquare>;

/// Checks parameter invariants (r_core > 0, n > 0, finite couplings).
/// Throws Error{invalid_argument}.
void validate(const Potential& p);

/// True when V(0) is finite, so evaluate_potential accepts r = 0.
bool finite_at_origin(const Potential& p);

/// V(r). Throws Error{domain_error} for r <= 0 on variants singular at the origin.
double evaluate_potential(const Potential& p, double r, double mass = 1.0);

struct Regular {
  bool operator==(const Regular&) const = default;
};

/// lim r^2 V = -v0. v0 > 0 is the attractive case; the repulsive
/// inverse-square case keeps its sign (v0 < 0).
struct TransitiveSingular {
  double v0 = 0.0;

  bool operator==(const TransitiveSingular&) const = default;
};

/// g / r^n with n > 2.
struct StronglySingular {
  double n = 3.0;
  double g = 0.0;

  bool operator==(const StronglySingular&) const = default;
};

using OriginClass = std::variant<Regular, TransitiveSingular, StronglySingular>;

OriginClass classify_origin(const Potential& p);

std::string_view origin_class_name(const OriginClass& c);

/// Uniform grid on [r_min, r_max]; node i sits at r_min + i h.
class RadialGrid {
 public:
  static constexpr std::size_t min_points = 16;

  RadialGrid(double r_min, double r_max, std::size_t n_points);

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }
  std::size_t size() const { return n_points_; }
  double spacing() const { return h_; }
  double r(std::size_t i) const { return r_min_ + static_cast<double>(i) * h_; }

  /// Same node count on [lambda r_min, lambda r_max].
  RadialGrid scaled(double lambda) const;

  bool operator==(const RadialGrid&) const = default;

 private:
  double r_min_;
  double r_max_;
  std::size_t n_points_;
  double h_;
};

// Mini-grammar used by the CLI:
//   coulomb:alpha=<f>  invsq:v0=<f>  power:g=<f>,n=<f>  harmonic:omega=<f>
//   invsq-reg:v0=<f>,rcore=<f>

/// Throws Error{invalid_argument} naming the offending token and its position.
Potential parse_potential(std::string_view spec);

/// Canonical spec string; parse_potential(format_potential(p)) == p up to
/// the printed precision.
std::string format_potential(const Potential& p);

}  // namespace radial_gate::model
