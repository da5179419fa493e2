#pragma once

#include <string>

#include <json.hpp>

#include "demon/engine.hpp"
#include "demon/uncertainty.hpp"

namespace demon {

// Shortest decimal form that parses back to the same double; CSV cells use
// a fixed %.17g so files from different runs diff cleanly.
std::string format_number(double x);

nlohmann::ordered_json report_to_json(const EngineScenario& scenario, const BoundReport& report);
nlohmann::ordered_json report_to_json(const EngineScenario& first, const EngineScenario& second,
                                      const TwoEngineReport& report);

// One header line and one data line, column order documented in
// docs/report_format.md.
std::string report_to_csv(const EngineScenario& scenario, const BoundReport& report);
std::string report_to_csv(const EngineScenario& first, const EngineScenario& second,
                          const TwoEngineReport& report);

} // namespace demon
