#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "faf/app/config.hpp"
#include "faf/fuzzy/inference.hpp"
#include "faf/sim/runtime.hpp"

namespace faf::app {

// One agent per linguistic variable, named after it, fully in the system
// (membership 1) and owning that variable as domain knowledge. Throws on an
// empty list or duplicate variable names.
std::vector<agents::FuzzyAgent> agentify(std::vector<fuzzy::LinguisticVariable> universes);

// Assemble a runnable system from a validated configuration: organization,
// agents (registered into their communities, affinities installed), declared
// variables, and decision rules.
sim::Runtime build_system(const SystemConfig& config, bool parallel = false,
                          std::uint64_t seed = 0);

// Project the fuzzy-effect decision rules onto a plain Mamdani rule set:
// premises are the rule's event term and condition term, the conclusion is
// its consequent effect. This is the agentless twin of the running system;
// both halves share the same membership evaluation and pooling code.
fuzzy::RuleSet ruleset_from_config(const SystemConfig& config);

// The variable the consequent rules write; empty when the config has none.
std::string output_variable(const SystemConfig& config);

// Direct inference with the configured algebra over crisp inputs keyed by
// variable name. Throws fuzzy::EmptyAggregateError when no rule fires.
double infer(const SystemConfig& config, const std::map<std::string, double>& inputs);

struct ScenarioOutcome {
    std::optional<double> output;            // final committed output value
    std::map<std::string, double> environment;
};

// Run the scenario to completion and report the final output-variable value
// (absent when no fuzzy effect ever committed).
ScenarioOutcome run_scenario(sim::Runtime& runtime, const sim::Scenario& scenario,
                             const std::string& output_variable);

} // namespace faf::app
