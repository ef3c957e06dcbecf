#include "faf/app/watering.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace faf::app {

std::vector<agents::FuzzyAgent> agentify(std::vector<fuzzy::LinguisticVariable> universes) {
    if (universes.empty()) {
        throw std::invalid_argument("agentify: no universes to agentify");
    }
    std::set<std::string> seen;
    std::vector<agents::FuzzyAgent> result;
    result.reserve(universes.size());
    for (auto& universe : universes) {
        if (!seen.insert(universe.name()).second) {
            throw std::invalid_argument("agentify: duplicate universe " + universe.name());
        }
        std::string name = universe.name();
        result.emplace_back(std::move(name), fuzzy::Degree(1.0), std::move(universe));
    }
    return result;
}

sim::Runtime build_system(const SystemConfig& config, bool parallel, std::uint64_t seed) {
    org::OrganizationState organization(config.roles, config.communities,
                                        config.organization);
    sim::RuntimeSettings settings;
    settings.obligation_timeout = config.obligation_timeout;
    settings.parallel = parallel;
    settings.seed = seed;
    sim::Runtime runtime(std::move(organization), settings);

    for (const auto& agent_config : config.agents) {
        std::optional<fuzzy::LinguisticVariable> owned;
        if (!agent_config.variable.empty()) {
            for (const auto& variable : config.variables) {
                if (variable.name() == agent_config.variable) {
                    owned = variable;
                    break;
                }
            }
            if (!owned) {
                throw std::invalid_argument("agent " + agent_config.name +
                                            " owns unknown variable " +
                                            agent_config.variable);
            }
        }
        agents::FuzzyAgent agent(agent_config.name, fuzzy::Degree(agent_config.membership),
                                 std::move(owned));
        for (const auto& [peer, degree] : agent_config.affinities) {
            agent.knowledge().set_affinity(peer, fuzzy::Degree(degree));
        }
        runtime.add_agent(std::move(agent), agent_config.community);
    }

    for (const auto& variable : config.variables) {
        runtime.declare_variable(variable.name());
    }
    for (const auto& binding : config.rules) {
        runtime.agent(binding.agent).add_rule(binding.rule);
    }
    return runtime;
}

fuzzy::RuleSet ruleset_from_config(const SystemConfig& config) {
    std::vector<fuzzy::MamdaniRule> rules;
    for (const auto& binding : config.rules) {
        std::size_t consequent_index = 0;
        for (const auto& action : binding.rule.actions) {
            const auto* effect = std::get_if<agents::EffectSpec>(&action);
            if (effect == nullptr || effect->kind != agents::EffectSpec::Kind::consequent) {
                continue;
            }
            fuzzy::MamdaniRule rule;
            rule.id = consequent_index == 0
                          ? binding.rule.id
                          : binding.rule.id + "#" + std::to_string(consequent_index);
            ++consequent_index;
            if (!binding.rule.on.event_term) {
                throw std::invalid_argument(
                    "rule " + binding.rule.id +
                    ": fuzzy effects need an event term to project onto an inference rule");
            }
            rule.premises.push_back(*binding.rule.on.event_term);
            if (binding.rule.when &&
                binding.rule.when->kind == agents::Condition::Kind::term) {
                rule.premises.push_back(binding.rule.when->term);
            }
            rule.conclusion = fuzzy::TermRef{effect->variable, effect->term};
            rules.push_back(std::move(rule));
        }
    }
    return fuzzy::RuleSet(config.variables, std::move(rules));
}

std::string output_variable(const SystemConfig& config) {
    for (const auto& binding : config.rules) {
        for (const auto& action : binding.rule.actions) {
            const auto* effect = std::get_if<agents::EffectSpec>(&action);
            if (effect != nullptr && effect->kind == agents::EffectSpec::Kind::consequent) {
                return effect->variable;
            }
        }
    }
    return {};
}

double infer(const SystemConfig& config, const std::map<std::string, double>& inputs) {
    const auto ruleset = ruleset_from_config(config);
    return fuzzy::infer_mamdani(ruleset, inputs, config.engine.tnorm);
}

ScenarioOutcome run_scenario(sim::Runtime& runtime, const sim::Scenario& scenario,
                             const std::string& output_variable) {
    runtime.run(scenario);
    ScenarioOutcome outcome;
    outcome.environment = runtime.environment();
    if (auto it = outcome.environment.find(output_variable);
        it != outcome.environment.end()) {
        outcome.output = it->second;
    }
    return outcome;
}

} // namespace faf::app
