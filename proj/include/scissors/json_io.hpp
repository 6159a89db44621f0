#pragma once

#include "json.hpp"
#include "scissors/detection.hpp"
#include "scissors/metrics.hpp"

namespace scissors {

// FockVector <-> {"dim": d, "re": [...], "im": [...]}
void to_json(nlohmann::json& j, const FockVector& v);
void from_json(const nlohmann::json& j, FockVector& v);

// DensityMatrix <-> {"dim": d, "re": [... row-major ...], "im": [...]}
void to_json(nlohmann::json& j, const DensityMatrix& rho);
void from_json(const nlohmann::json& j, DensityMatrix& rho);

// Undefined metrics serialize as null.
void to_json(nlohmann::json& j, const MetricReport& r);

void to_json(nlohmann::json& j, const PovmElement& e);

}  // namespace scissors
