#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "faf/agents/rules.hpp"
#include "faf/fuzzy/sets.hpp"
#include "faf/org/organization.hpp"
#include "faf/protocol/acts.hpp"
#include "faf/sim/runtime.hpp"

namespace faf::app {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EngineSettings {
    std::size_t resolution = 1001;
    fuzzy::TNorm tnorm = fuzzy::TNorm::minimum;
    fuzzy::TConorm tconorm = fuzzy::TConorm::maximum;
    fuzzy::Implication implication = fuzzy::Implication::mamdani;
};

struct AgentConfig {
    std::string name;
    double membership = 1.0;
    std::string variable;  // owned linguistic variable; empty = none
    std::string community; // reference community
    std::map<std::string, double> affinities;
};

struct RuleBinding {
    std::string agent;
    agents::DecisionRule rule;
};

// A complete system description: algebra settings, the linguistic variables,
// the organization, the agent population and their decision rules. Term
// aliases (e.g. an alternative label for one humidity term) are resolved to
// canonical labels at load time, so every in-memory reference is canonical.
struct SystemConfig {
    EngineSettings engine;
    std::vector<fuzzy::LinguisticVariable> variables;
    std::map<std::string, std::map<std::string, std::string>> aliases; // var -> alias -> term
    std::vector<protocol::MessageType> message_types;
    std::vector<org::Role> roles;
    std::vector<org::Community> communities; // member lists stay empty here
    org::OrganizationSettings organization;
    std::int64_t obligation_timeout = 10;
    std::vector<AgentConfig> agents;
    std::vector<RuleBinding> rules;
};

SystemConfig config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const SystemConfig& config);
SystemConfig load_config(const std::string& path);
void save_config(const SystemConfig& config, const std::string& path);

// Structural checks (every cross-reference resolves) plus, when the config
// defines the reference watering vocabulary, the calibration anchor points
// those rules were tuned against. Throws ConfigError with a one-line reason.
void validate_config(const SystemConfig& config);

sim::Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::ordered_json scenario_to_json(const sim::Scenario& scenario);
sim::Scenario load_scenario(const std::string& path);

} // namespace faf::app
