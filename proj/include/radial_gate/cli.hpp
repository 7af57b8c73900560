#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "radial_gate/indicial.hpp"
#include "radial_gate/samples.hpp"

namespace radial_gate::cli {

/// Exit codes: 0 success, 1 domain error, 2 usage error.
inline constexpr int exit_ok = 0;
inline constexpr int exit_domain = 1;
inline constexpr int exit_usage = 2;

/// Data goes to `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `dirichlet`, `dirichlet:theta=<f>,rref=<f>` or `si:theta=<f>,rref=<f>`.
indicial::BoundaryPolicy parse_policy(std::string_view spec);

/// Named test profiles for the residual commands: one, r, cos, sin, exp,
/// r-exp, r2, one-plus-r2.
double named_profile(std::string_view name, double r);

}  // namespace radial_gate::cli
