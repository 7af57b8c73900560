#include "radial_gate/serialize.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "radial_gate/error.hpp"

namespace radial_gate {

std::string format12(double x) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x,
                                 std::chars_format::general, 12);
  return std::string(buf.data(), end);
}

double round12(double x) {
  if (!std::isfinite(x)) return x;
  const std::string s = format12(x);
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

namespace {

Json num(double x) { return round12(x); }

template <class T>
void put_optional(Json& j, const char* key, const std::optional<T>& v) {
  if (v) {
    if constexpr (std::is_same_v<T, double>) {
      j[key] = num(*v);
    } else {
      j[key] = *v;
    }
  }
}

std::optional<double> get_optional(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

const char* outer_name(solver::OuterBoundary b) {
  return b == solver::OuterBoundary::wall ? "wall" : "decaying";
}

}  // namespace

Json to_json(const model::OriginClass& c) {
  Json j;
  j["class"] = std::string(model::origin_class_name(c));
  if (const auto* t = std::get_if<model::TransitiveSingular>(&c)) j["v0"] = num(t->v0);
  if (const auto* s = std::get_if<model::StronglySingular>(&c)) {
    j["n"] = num(s->n);
    j["g"] = num(s->g);
  }
  return j;
}

model::OriginClass origin_class_from_json(const Json& j) {
  const auto name = j.at("class").get<std::string>();
  if (name == "regular") return model::Regular{};
  if (name == "transitive_singular") return model::TransitiveSingular{j.at("v0").get<double>()};
  if (name == "strongly_singular") {
    return model::StronglySingular{j.at("n").get<double>(), j.at("g").get<double>()};
  }
  fail(ErrorCode::invalid_argument, "unknown origin class '" + name + "'");
}

Json to_json(const indicial::BoundaryPolicy& p) {
  Json j;
  if (const auto* d = std::get_if<indicial::DirichletOrigin>(&p)) {
    j["kind"] = "dirichlet";
    if (d->theta) {
      j["theta"] = num(*d->theta);
      j["r_ref"] = num(d->r_ref);
    }
  } else {
    const auto& s = std::get<indicial::SquareIntegrableOnly>(p);
    j["kind"] = "square_integrable";
    j["theta"] = num(s.theta);
    j["r_ref"] = num(s.r_ref);
  }
  return j;
}

indicial::BoundaryPolicy policy_from_json(const Json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "dirichlet") {
    indicial::DirichletOrigin d;
    d.theta = get_optional(j, "theta");
    if (d.theta) d.r_ref = j.at("r_ref").get<double>();
    return d;
  }
  if (kind == "square_integrable") {
    return indicial::SquareIntegrableOnly{j.at("theta").get<double>(), j.at("r_ref").get<double>()};
  }
  fail(ErrorCode::invalid_argument, "unknown policy kind '" + kind + "'");
}

Json to_json(const indicial::IndicialReport& r) {
  Json j;
  const Json origin = to_json(r.origin);
  j["origin_class"] = origin.at("class");
  if (origin.contains("v0")) j["v0"] = origin.at("v0");
  j["l"] = r.l;
  j["mass"] = num(r.mass);
  j["fall_to_center"] = r.fall_to_center;
  j["degenerate"] = r.degenerate;
  put_optional(j, "s_plus", r.s_plus);
  put_optional(j, "s_minus", r.s_minus);
  put_optional(j, "p_value", r.p_value);
  if (r.policy) {
    const Json p = to_json(*r.policy);
    j["policy"] = p.at("kind");
    if (p.contains("theta")) j["policy_theta"] = p.at("theta");
    if (p.contains("r_ref")) j["policy_r_ref"] = p.at("r_ref");
  }
  auto flags = [&j](const char* prefix, const std::optional<indicial::ExponentFlags>& f) {
    if (!f) return;
    const std::string p(prefix);
    j[p + "_square_integrable"] = f->square_integrable;
    j[p + "_vanishes_at_origin"] = f->vanishes_at_origin;
    j[p + "_admissible"] = f->admissible;
  };
  flags("s_plus", r.plus_flags);
  flags("s_minus", r.minus_flags);
  put_optional(j, "ambiguous", r.ambiguous);
  return j;
}

indicial::IndicialReport indicial_report_from_json(const Json& j) {
  indicial::IndicialReport r;
  Json origin;
  origin["class"] = j.at("origin_class");
  if (j.contains("v0")) origin["v0"] = j.at("v0");
  r.origin = origin_class_from_json(origin);
  r.l = j.at("l").get<int>();
  r.mass = j.at("mass").get<double>();
  r.fall_to_center = j.at("fall_to_center").get<bool>();
  r.degenerate = j.at("degenerate").get<bool>();
  r.s_plus = get_optional(j, "s_plus");
  r.s_minus = get_optional(j, "s_minus");
  r.p_value = get_optional(j, "p_value");
  if (j.contains("policy")) {
    Json p;
    p["kind"] = j.at("policy");
    if (j.contains("policy_theta")) p["theta"] = j.at("policy_theta");
    if (j.contains("policy_r_ref")) p["r_ref"] = j.at("policy_r_ref");
    r.policy = policy_from_json(p);
  }
  auto flags = [&j](const std::string& p) -> std::optional<indicial::ExponentFlags> {
    if (!j.contains(p + "_admissible")) return std::nullopt;
    return indicial::ExponentFlags{j.at(p + "_square_integrable").get<bool>(),
                                   j.at(p + "_vanishes_at_origin").get<bool>(),
                                   j.at(p + "_admissible").get<bool>()};
  };
  r.plus_flags = flags("s_plus");
  r.minus_flags = flags("s_minus");
  if (j.contains("ambiguous")) r.ambiguous = j.at("ambiguous").get<bool>();
  return r;
}

Json to_json(const deltaprobe::ResidualReport& r) {
  Json j;
  j["probe_radius"] = num(r.probe_radius);
  j["integral"] = num(r.integral);
  j["predicted"] = num(r.predicted);
  j["relative_error"] = num(r.relative_error);
  j["grid_spacing"] = num(r.grid_spacing);
  j["u_origin"] = num(r.u_origin);
  return j;
}

deltaprobe::ResidualReport residual_report_from_json(const Json& j) {
  deltaprobe::ResidualReport r;
  r.probe_radius = j.at("probe_radius").get<double>();
  r.integral = j.at("integral").get<double>();
  r.predicted = j.at("predicted").get<double>();
  r.relative_error = j.at("relative_error").get<double>();
  r.grid_spacing = j.at("grid_spacing").get<double>();
  r.u_origin = j.at("u_origin").get<double>();
  return r;
}

Json to_json(const solver::Spectrum& s) {
  Json j;
  j["equation"] =
      s.problem.kind == solver::EquationKind::schrodinger ? "schrodinger" : "klein_gordon";
  j["potential"] = model::format_potential(s.problem.potential);
  j["l"] = s.problem.l;
  j["mass"] = num(s.problem.mass);
  j["policy"] = to_json(s.policy);
  j["grid"] = {{"r_min", num(s.grid.r_min())},
               {"r_max", num(s.grid.r_max())},
               {"n_points", s.grid.size()}};
  j["outer_boundary"] = outer_name(s.outer);
  Json entries = Json::array();
  for (std::size_t k = 0; k < s.entries.size(); ++k) {
    const auto& e = s.entries[k];
    entries.push_back({{"k", k},
                       {"energy", num(e.energy)},
                       {"node_count", e.node_count},
                       {"converged", e.converged},
                       {"bisection_width", num(e.bisection_width)}});
  }
  j["entries"] = entries;
  return j;
}

solver::Spectrum spectrum_from_json(const Json& j) {
  solver::Spectrum s;
  s.problem.kind = j.at("equation").get<std::string>() == "schrodinger"
                       ? solver::EquationKind::schrodinger
                       : solver::EquationKind::klein_gordon;
  s.problem.potential = model::parse_potential(j.at("potential").get<std::string>());
  s.problem.l = j.at("l").get<int>();
  s.problem.mass = j.at("mass").get<double>();
  s.policy = policy_from_json(j.at("policy"));
  const auto& g = j.at("grid");
  s.grid = model::RadialGrid(g.at("r_min").get<double>(), g.at("r_max").get<double>(),
                             g.at("n_points").get<std::size_t>());
  s.outer = j.at("outer_boundary").get<std::string>() == "wall" ? solver::OuterBoundary::wall
                                                                : solver::OuterBoundary::decaying;
  for (const auto& e : j.at("entries")) {
    s.entries.push_back(solver::SpectrumEntry{e.at("energy").get<double>(),
                                              e.at("node_count").get<int>(),
                                              e.at("converged").get<bool>(),
                                              e.at("bisection_width").get<double>()});
  }
  return s;
}

Json to_json(const oracle3d::EigenResult& r) {
  Json j;
  Json ev = Json::array();
  Json res = Json::array();
  for (double e : r.eigenvalues) ev.push_back(num(e));
  for (double e : r.residuals) res.push_back(num(e));
  j["eigenvalues"] = ev;
  j["residuals"] = res;
  j["iterations"] = r.iterations;
  return j;
}

oracle3d::EigenResult eigen_result_from_json(const Json& j) {
  oracle3d::EigenResult r;
  r.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  r.residuals = j.at("residuals").get<std::vector<double>>();
  r.iterations = j.at("iterations").get<std::size_t>();
  return r;
}

}  // namespace radial_gate
