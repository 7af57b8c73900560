#include "radial_gate/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "radial_gate/deltaprobe.hpp"
#include "radial_gate/error.hpp"
#include "radial_gate/model.hpp"
#include "radial_gate/oracle3d.hpp"
#include "radial_gate/serialize.hpp"
#include "radial_gate/solver.hpp"

namespace radial_gate::cli {

namespace {

[[noreturn]] void flag_error(const std::string& flag, const std::string& msg) {
  fail(ErrorCode::invalid_argument, flag + ": " + msg);
}

double parse_real(std::string_view text, const std::string& flag) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    flag_error(flag, "'" + std::string(text) + "' is not a finite real number");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    out.push_back(parse_real(std::string_view(text).substr(pos, comma - pos), flag));
    pos = comma + 1;
  }
  return out;
}

std::vector<double> parse_fixed(const std::string& text, std::size_t count, const std::string& flag) {
  auto v = parse_list(text, flag);
  if (v.size() != count) {
    flag_error(flag, "expected " + std::to_string(count) + " comma-separated values");
  }
  return v;
}

model::RadialGrid parse_grid(const std::string& text) {
  const auto v = parse_fixed(text, 3, "--grid");
  if (v[2] < 0.0 || v[2] != std::floor(v[2])) flag_error("--grid", "point count must be an integer");
  try {
    return model::RadialGrid(v[0], v[1], static_cast<std::size_t>(v[2]));
  } catch (const Error& e) {
    flag_error("--grid", e.what());
  }
}

model::Potential parse_potential_flag(const std::string& text) {
  try {
    return model::parse_potential(text);
  } catch (const Error& e) {
    flag_error("--potential", e.what());
  }
}

solver::EnergyWindow parse_window(const std::string& text) {
  const auto v = parse_fixed(text, 2, "--window");
  return {v[0], v[1]};
}

/// Output sink: a file when --output is given, otherwise the data stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) flag_error("--output", "cannot open '" + path + "' for writing");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void emit_json(std::ostream& os, const Json& j) { os << j.dump(2) << '\n'; }

std::string csv_cell(const Json& v) {
  if (v.is_number_float()) return format12(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

/// Flat object as a header row plus one value row.
void emit_flat_csv(std::ostream& os, const Json& j) {
  std::string header;
  std::string row;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!header.empty()) {
      header += ',';
      row += ',';
    }
    header += it.key();
    row += csv_cell(it.value());
  }
  os << header << '\n' << row << '\n';
}

void spectrum_csv_rows(std::ostream& os, const solver::Spectrum& s, const std::string& prefix) {
  for (std::size_t k = 0; k < s.entries.size(); ++k) {
    const auto& e = s.entries[k];
    os << prefix << k << ',' << format12(e.energy) << ',' << e.node_count << ','
       << format12(e.bisection_width) << '\n';
  }
}

RadialSamples read_profile_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) flag_error("--u-csv", "cannot open '" + path + "'");
  std::vector<double> r;
  std::vector<double> u;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) flag_error("--u-csv", "expected 'r,u' rows");
    const std::string_view a = std::string_view(line).substr(0, comma);
    const std::string_view b = std::string_view(line).substr(comma + 1);
    if (r.empty() && u.empty() && (a == "r" || a == "\"r\"")) continue;  // header
    r.push_back(parse_real(a, "--u-csv"));
    u.push_back(parse_real(b, "--u-csv"));
  }
  if (r.size() < model::RadialGrid::min_points) flag_error("--u-csv", "too few samples");
  const double h = (r.back() - r.front()) / static_cast<double>(r.size() - 1);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (std::abs(r[i] - (r.front() + static_cast<double>(i) * h)) > 1e-6 * h) {
      flag_error("--u-csv", "samples must lie on a uniform grid");
    }
  }
  try {
    return RadialSamples(model::RadialGrid(r.front(), r.back(), r.size()), std::move(u));
  } catch (const Error& e) {
    flag_error("--u-csv", e.what());
  }
}

RadialSamples profile_on(const std::string& name, double h, double r_max) {
  const auto n = static_cast<std::size_t>(std::llround((r_max - h) / h)) + 1;
  const model::RadialGrid grid(h, h + static_cast<double>(n - 1) * h, n);
  return RadialSamples::tabulate(grid, [&](double r) { return named_profile(name, r); });
}

void check_profile_name(const std::string& name) {
  try {
    named_profile(name, 1.0);
  } catch (const Error&) {
    flag_error("--u", "unknown profile '" + name + "' (one, r, cos, sin, exp, r-exp, r2, one-plus-r2)");
  }
}

struct Common {
  std::string format = "json";
  std::string output;
};

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--output", common.output, "write data here instead of standard output");
}

}  // namespace

double named_profile(std::string_view name, double r) {
  if (name == "one") return 1.0;
  if (name == "r") return r;
  if (name == "cos") return std::cos(r);
  if (name == "sin") return std::sin(r);
  if (name == "exp") return std::exp(-r);
  if (name == "r-exp") return r * std::exp(-r);
  if (name == "r2") return r * r;
  if (name == "one-plus-r2") return 1.0 + r * r;
  fail(ErrorCode::invalid_argument, "unknown profile '" + std::string(name) + "'");
}

indicial::BoundaryPolicy parse_policy(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view kind = spec.substr(0, colon);
  double theta = 0.0;
  double r_ref = 1.0;
  bool has_theta = false;
  if (colon != std::string_view::npos) {
    std::size_t pos = colon + 1;
    while (pos <= spec.size()) {
      std::size_t comma = spec.find(',', pos);
      if (comma == std::string_view::npos) comma = spec.size();
      const std::string_view token = spec.substr(pos, comma - pos);
      const std::size_t eq = token.find('=');
      if (eq == std::string_view::npos) {
        flag_error("--policy", "expected key=value at position " + std::to_string(pos));
      }
      const std::string_view key = token.substr(0, eq);
      const double v = parse_real(token.substr(eq + 1), "--policy");
      if (key == "theta") {
        theta = v;
        has_theta = true;
      } else if (key == "rref") {
        r_ref = v;
      } else {
        flag_error("--policy", "unknown key '" + std::string(key) + "' at position " +
                                   std::to_string(pos));
      }
      pos = comma + 1;
    }
  }
  indicial::BoundaryPolicy policy;
  if (kind == "dirichlet") {
    indicial::DirichletOrigin d;
    if (has_theta) {
      d.theta = theta;
      d.r_ref = r_ref;
    }
    policy = d;
  } else if (kind == "si") {
    if (!has_theta) flag_error("--policy", "si policy needs theta=<f>");
    policy = indicial::SquareIntegrableOnly{theta, r_ref};
  } else {
    flag_error("--policy", "unknown policy '" + std::string(kind) + "' (dirichlet or si)");
  }
  try {
    indicial::validate(policy);
  } catch (const Error& e) {
    flag_error("--policy", e.what());
  }
  return policy;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radial Schrodinger boundary-condition laboratory", "radial-gate"};
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);

  Common common;
  std::string potential_text;
  std::string policy_text = "dirichlet";
  int l = 0;
  double mass = 1.0;

  auto add_physics = [&](CLI::App* cmd, bool with_policy) {
    cmd->add_option("--potential", potential_text, "potential, e.g. coulomb:alpha=1")
        ->required();
    cmd->add_option("--l", l, "orbital quantum number")->check(CLI::NonNegativeNumber);
    cmd->add_option("--mass", mass, "particle mass")->check(CLI::PositiveNumber);
    if (with_policy) cmd->add_option("--policy", policy_text, "dirichlet | si:theta=<f>,rref=<f>");
    add_common(cmd, common);
  };

  auto* classify = app.add_subcommand("classify", "origin class of a potential");
  classify->add_option("--potential", potential_text, "potential, e.g. coulomb:alpha=1")->required();
  add_common(classify, common);

  auto* indicial_cmd = app.add_subcommand("indicial", "Frobenius exponents and admissibility");
  add_physics(indicial_cmd, true);

  std::string u_name;
  std::string u_csv;
  double probe = 0.1;
  double h = 1e-3;
  double r_max = 0.0;
  int levels = 1;
  std::string convention = "quarter";
  auto* residual = app.add_subcommand("residual", "point defect of the radial Laplacian identity");
  residual->add_option("--u", u_name, "named profile");
  residual->add_option("--u-csv", u_csv, "sampled profile as r,u rows on a uniform grid");
  residual->add_option("--a", probe, "probe radius")->check(CLI::PositiveNumber);
  residual->add_option("--h", h, "grid spacing for named profiles")->check(CLI::PositiveNumber);
  residual->add_option("--rmax", r_max, "grid extent for named profiles (default 2a)");
  residual->add_option("--levels", levels, "number of h-halvings to tabulate")
      ->check(CLI::Range(1, 12));
  residual->add_option("--convention", convention, "delta reduction: quarter or half")
      ->check(CLI::IsMember({"quarter", "half"}));
  add_common(residual, common);

  double r_low = 0.5;
  auto* identity = app.add_subcommand("identity-defect", "operator identity defect away from 0");
  identity->add_option("--u", u_name, "named profile")->required();
  identity->add_option("--r-low", r_low, "lowest radius checked")->check(CLI::PositiveNumber);
  identity->add_option("--h", h, "grid spacing")->check(CLI::PositiveNumber);
  identity->add_option("--rmax", r_max, "grid extent (default 2)");
  identity->add_option("--levels", levels, "number of h-halvings")->check(CLI::Range(1, 12));
  add_common(identity, common);

  std::string grid_text = "1e-4,80,20000";
  std::string window_text;
  std::size_t k_max = 1;
  std::string boundary;
  std::vector<std::string> dump;
  auto add_spectrum_opts = [&](CLI::App* cmd) {
    cmd->add_option("--grid", grid_text, "rmin,rmax,n");
    cmd->add_option("--window", window_text, "lo,hi energy window")->required();
    cmd->add_option("--k", k_max, "maximum number of levels")->check(CLI::PositiveNumber);
  };
  auto* spectrum = app.add_subcommand("spectrum", "Schrodinger bound states by shooting");
  add_physics(spectrum, true);
  add_spectrum_opts(spectrum);
  spectrum->add_option("--boundary", boundary, "outer boundary: decaying or wall")
      ->check(CLI::IsMember({"decaying", "wall"}));
  spectrum->add_option("--dump-wavefunction", dump, "k FILE: write (r,u) rows of level k")
      ->expected(2);

  auto* kg = app.add_subcommand("kg-spectrum", "Klein-Gordon Coulomb bound states");
  add_physics(kg, true);
  add_spectrum_opts(kg);
  kg->add_option("--dump-wavefunction", dump, "k FILE: write (r,u) rows of level k")->expected(2);

  std::string thetas_text = "0";
  double r_ref = 1.0;
  auto* contrast = app.add_subcommand("contrast", "spectra under competing boundary policies");
  add_physics(contrast, false);
  add_spectrum_opts(contrast);
  contrast->add_option("--thetas", thetas_text, "comma-separated mixing angles");
  contrast->add_option("--rref", r_ref, "reference radius of the mixture")
      ->check(CLI::PositiveNumber);

  std::size_t n3 = 48;
  double half_width = 6.0;
  std::size_t k3 = 1;
  auto* oracle = app.add_subcommand("oracle3d", "3D Cartesian eigenvalues");
  oracle->add_option("--potential", potential_text, "potential, e.g. coulomb:alpha=1")->required();
  oracle->add_option("--mass", mass, "particle mass")->check(CLI::PositiveNumber);
  oracle->add_option("--n", n3, "nodes per axis (even)");
  oracle->add_option("--L", half_width, "box half-width");
  oracle->add_option("--k", k3, "number of eigenvalues (<= 5)");
  add_common(oracle, common);

  if (!args.empty() && !args.front().starts_with("-") &&
      app.get_subcommand_no_throw(args.front()) == nullptr) {
    err << "usage error: unknown subcommand '" << args.front()
        << "' (classify, indicial, residual, identity-defect, spectrum, kg-spectrum, contrast, "
           "oracle3d)\n";
    return exit_usage;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return exit_usage;
  }

  try {
    const bool csv = common.format == "csv";
    if (classify->parsed()) {
      const auto p = parse_potential_flag(potential_text);
      Json j = to_json(model::classify_origin(p));
      j["potential"] = model::format_potential(p);
      Sink sink(common.output, out);
      csv ? emit_flat_csv(sink.stream(), j) : emit_json(sink.stream(), j);
    } else if (indicial_cmd->parsed()) {
      const auto p = parse_potential_flag(potential_text);
      const auto policy = parse_policy(policy_text);
      auto report = indicial::indicial_exponents(model::classify_origin(p), l, mass);
      if (report.fall_to_center) {
        err << "fall to center: 2 m v0 > (l + 1/2)^2, the indicial exponents are complex\n";
        return exit_domain;
      }
      report = indicial::admissibility(report, policy);
      Sink sink(common.output, out);
      csv ? emit_flat_csv(sink.stream(), to_json(report)) : emit_json(sink.stream(), to_json(report));
    } else if (residual->parsed()) {
      if (u_name.empty() == u_csv.empty()) flag_error("--u", "give exactly one of --u or --u-csv");
      const auto conv = convention == "half" ? deltaprobe::DeltaConvention::half_pi
                                             : deltaprobe::DeltaConvention::quarter_pi;
      std::vector<deltaprobe::ResidualReport> reports;
      if (!u_csv.empty()) {
        reports.push_back(deltaprobe::numeric_delta_residual(read_profile_csv(u_csv), probe, conv));
      } else {
        check_profile_name(u_name);
        const double extent = r_max > 0.0 ? r_max : 2.0 * probe;
        double step = h;
        for (int i = 0; i < levels; ++i, step *= 0.5) {
          reports.push_back(
              deltaprobe::numeric_delta_residual(profile_on(u_name, step, extent), probe, conv));
        }
      }
      Sink sink(common.output, out);
      if (csv) {
        sink.stream() << "h,integral,relative_error\n";
        for (const auto& r : reports) {
          sink.stream() << format12(r.grid_spacing) << ',' << format12(r.integral) << ','
                        << format12(r.relative_error) << '\n';
        }
      } else {
        Json j = to_json(reports.back());
        if (reports.size() > 1) {
          Json rows = Json::array();
          for (const auto& r : reports) {
            rows.push_back({{"h", round12(r.grid_spacing)},
                            {"integral", round12(r.integral)},
                            {"relative_error", round12(r.relative_error)}});
          }
          j["convergence"] = rows;
        }
        emit_json(sink.stream(), j);
      }
    } else if (identity->parsed()) {
      check_profile_name(u_name);
      const double extent = r_max > 0.0 ? r_max : 2.0;
      Json rows = Json::array();
      double step = h;
      for (int i = 0; i < levels; ++i, step *= 0.5) {
        const double d =
            deltaprobe::identity_defect_away_from_origin(profile_on(u_name, step, extent), r_low);
        rows.push_back({{"h", round12(step)}, {"r_low", round12(r_low)}, {"defect", round12(d)}});
      }
      Sink sink(common.output, out);
      if (csv) {
        sink.stream() << "h,r_low,defect\n";
        for (const auto& r : rows) {
          sink.stream() << csv_cell(r["h"]) << ',' << csv_cell(r["r_low"]) << ','
                        << csv_cell(r["defect"]) << '\n';
        }
      } else {
        Json j = rows.back();
        if (rows.size() > 1) j["convergence"] = rows;
        emit_json(sink.stream(), j);
      }
    } else if (spectrum->parsed() || kg->parsed()) {
      const auto p = parse_potential_flag(potential_text);
      const auto policy = parse_policy(policy_text);
      const auto grid = parse_grid(grid_text);
      const auto window = parse_window(window_text);
      solver::Spectrum s;
      if (kg->parsed()) {
        const auto* c = std::get_if<model::Coulomb>(&p);
        if (c == nullptr) flag_error("--potential", "kg-spectrum takes a coulomb potential");
        s = solver::kg_bound_states(*c, l, mass, policy, window, k_max, grid);
      } else {
        std::optional<solver::OuterBoundary> outer;
        if (!boundary.empty()) {
          outer = boundary == "wall" ? solver::OuterBoundary::wall : solver::OuterBoundary::decaying;
        }
        s = solver::bound_states(p, l, mass, policy, window, k_max, grid, outer);
      }
      if (!dump.empty()) {
        const double level = parse_real(dump[0], "--dump-wavefunction");
        if (level < 0.0 || level != std::floor(level) ||
            static_cast<std::size_t>(level) >= s.entries.size()) {
          flag_error("--dump-wavefunction", "level index out of range");
        }
        const auto u = solver::eigenfunction(s, static_cast<std::size_t>(level));
        std::ofstream f(dump[1]);
        if (!f) flag_error("--dump-wavefunction", "cannot open '" + dump[1] + "'");
        f << "r,u\n";
        for (std::size_t i = 0; i < u.u.size(); ++i) {
          f << format12(u.grid.r(i)) << ',' << format12(u.u[i]) << '\n';
        }
      }
      Sink sink(common.output, out);
      if (csv) {
        sink.stream() << "k,E,nodes,width\n";
        spectrum_csv_rows(sink.stream(), s, "");
      } else {
        emit_json(sink.stream(), to_json(s));
      }
    } else if (contrast->parsed()) {
      const auto p = parse_potential_flag(potential_text);
      const auto grid = parse_grid(grid_text);
      const auto window = parse_window(window_text);
      const auto thetas = parse_list(thetas_text, "--thetas");
      const auto spectra = solver::policy_contrast(p, l, mass, thetas, grid, window, k_max, r_ref);
      Sink sink(common.output, out);
      if (csv) {
        sink.stream() << "policy,theta,k,E,nodes,width\n";
        for (std::size_t i = 0; i < spectra.size(); ++i) {
          const std::string prefix =
              i == 0 ? std::string("dirichlet,,") : "si," + format12(thetas[i - 1]) + ",";
          spectrum_csv_rows(sink.stream(), spectra[i], prefix);
        }
      } else {
        Json j;
        Json list = Json::array();
        for (const auto& s : spectra) list.push_back(to_json(s));
        j["spectra"] = list;
        emit_json(sink.stream(), j);
      }
    } else if (oracle->parsed()) {
      const auto p = parse_potential_flag(potential_text);
      oracle3d::CartesianGrid grid = [&] {
        try {
          return oracle3d::CartesianGrid(half_width, n3);
        } catch (const Error& e) {
          flag_error("--n/--L", e.what());
        }
      }();
      if (k3 < 1 || k3 > 5) flag_error("--k", "must lie in [1, 5]");
      const auto result = oracle3d::lowest_eigenvalues_3d(p, mass, grid, k3);
      Sink sink(common.output, out);
      if (csv) {
        sink.stream() << "k,eigenvalue,residual\n";
        for (std::size_t i = 0; i < result.eigenvalues.size(); ++i) {
          sink.stream() << i << ',' << format12(result.eigenvalues[i]) << ','
                        << format12(result.residuals[i]) << '\n';
        }
      } else {
        Json j;
        j["potential"] = model::format_potential(p);
        j["mass"] = round12(mass);
        j["L"] = round12(half_width);
        j["n"] = n3;
        const Json eigen = to_json(result);
        for (const auto& [key, value] : eigen.items()) j[key] = value;
        emit_json(sink.stream(), j);
      }
    }
  } catch (const Error& e) {
    err << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::invalid_argument ? exit_usage : exit_domain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_domain;
  }
  return exit_ok;
}

}  // namespace radial_gate::cli
