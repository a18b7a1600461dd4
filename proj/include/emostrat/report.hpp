#pragma once

#include <string>

#include "emostrat/diagnostics.hpp"
#include "emostrat/strata.hpp"
#include "json.hpp"

namespace emostrat {

// Machine-readable reports. Percentages are rounded half-up to 2 decimals,
// divergences to 6; absent values are null.
nlohmann::json to_json(const F1Report& report);
nlohmann::json to_json(const ShiftReport& report);
nlohmann::json to_json(const EvaluationReport& report);
nlohmann::json to_json(const PartitionComparison& comparison);

// Markdown tables with splits as rows and emotion classes as columns.
std::string to_markdown(const ShiftReport& report);
std::string to_markdown(const EvaluationReport& report);
std::string to_markdown(const PartitionComparison& comparison);

}  // namespace emostrat
