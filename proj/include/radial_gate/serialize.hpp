#pragma once

#include <string>

#include "json.hpp"
#include "radial_gate/deltaprobe.hpp"
#include "radial_gate/indicial.hpp"
#include "radial_gate/model.hpp"
#include "radial_gate/oracle3d.hpp"
#include "radial_gate/solver.hpp"

namespace radial_gate {

using Json = nlohmann::ordered_json;

/// x rounded to 12 significant digits (the precision of every emitted number).
double round12(double x);

/// 12 significant digits, '.' decimal point regardless of locale.
std::string format12(double x);

Json to_json(const model::OriginClass& c);
model::OriginClass origin_class_from_json(const Json& j);

Json to_json(const indicial::BoundaryPolicy& p);
indicial::BoundaryPolicy policy_from_json(const Json& j);

/// Flat key-value record.
Json to_json(const indicial::IndicialReport& r);
indicial::IndicialReport indicial_report_from_json(const Json& j);

Json to_json(const deltaprobe::ResidualReport& r);
deltaprobe::ResidualReport residual_report_from_json(const Json& j);

Json to_json(const solver::Spectrum& s);
solver::Spectrum spectrum_from_json(const Json& j);

Json to_json(const oracle3d::EigenResult& r);
oracle3d::EigenResult eigen_result_from_json(const Json& j);

}  // namespace radial_gate
