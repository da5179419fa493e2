#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "demon/engine.hpp"

namespace demon {

// Input rejected with the offending field path in the message.
class ScenarioParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScenarioDocument {
    enum class Mode { single, two_engine };
    Mode mode = Mode::single;
    EngineScenario first;
    // Present in two_engine mode: same engine up to the measurement, with its
    // own basis, feedback and final system term.
    std::optional<EngineScenario> second;
};

ScenarioDocument parse_scenario_json(const nlohmann::ordered_json& doc);
ScenarioDocument parse_scenario_file(const std::string& path);

std::vector<std::string> builtin_names();
ScenarioDocument builtin_scenario(const std::string& name, std::uint64_t seed);

// Two-qubit controlled flip; the indices pick which slot controls.
ComplexMatrix cnot_gate(std::size_t control, std::size_t target);
// Exchanges two factors of the given dimension.
ComplexMatrix swap_gate(std::size_t factor_dim);
ComplexMatrix hadamard_gate();

} // namespace demon
