#include "faf/app/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "faf/agents/knowledge.hpp"
#include "faf/sim/trace.hpp"

namespace faf::app {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON in ") + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write file: " + path);
    out << text;
}

// Resolve one term label through the variable's alias table.
std::string canonical_term(const SystemConfig& config, const std::string& variable,
                           const std::string& term) {
    auto var_it = config.aliases.find(variable);
    if (var_it == config.aliases.end()) return term;
    auto alias_it = var_it->second.find(term);
    return alias_it == var_it->second.end() ? term : alias_it->second;
}

fuzzy::TermRef parse_term_ref(const SystemConfig& config, const std::string& dotted,
                              fuzzy::Modifier modifier) {
    const auto [variable, term] = agents::split_topic(dotted);
    if (term.empty()) {
        throw ConfigError("term reference must be variable.term: " + dotted);
    }
    return fuzzy::TermRef{variable, canonical_term(config, variable, term), modifier};
}

fuzzy::Modifier modifier_field(const json& j, const char* key) {
    if (!j.contains(key)) return fuzzy::Modifier::none;
    return fuzzy::modifier_from_name(j.at(key).get<std::string>());
}

std::string dotted(const fuzzy::TermRef& ref) {
    return ref.variable + "." + ref.term;
}

agents::EventPattern pattern_from_json(const SystemConfig& config, const json& j) {
    agents::EventPattern on;
    on.kind = agents::event_kind_from_name(j.at("event").get<std::string>());
    if (j.contains("performative")) {
        on.performative =
            protocol::performative_from_name(j.at("performative").get<std::string>());
    }
    if (j.contains("mtype")) on.mtype = j.at("mtype").get<int>();
    if (j.contains("variables")) {
        on.variables = j.at("variables").get<std::vector<std::string>>();
    }
    if (j.contains("variable")) on.variable = j.at("variable").get<std::string>();
    if (j.contains("terms")) {
        for (const auto& term : j.at("terms")) {
            on.terms.push_back(
                canonical_term(config, on.variable, term.get<std::string>()));
        }
    }
    if (j.contains("event_term")) {
        on.event_term = parse_term_ref(config, j.at("event_term").get<std::string>(),
                                       modifier_field(j, "event_modifier"));
    }
    return on;
}

ordered_json pattern_to_json(const agents::EventPattern& on) {
    ordered_json j;
    j["event"] = agents::event_kind_name(on.kind);
    if (on.performative) j["performative"] = protocol::performative_name(*on.performative);
    if (on.mtype) j["mtype"] = *on.mtype;
    if (!on.variables.empty()) j["variables"] = on.variables;
    if (!on.variable.empty()) j["variable"] = on.variable;
    if (!on.terms.empty()) j["terms"] = on.terms;
    if (on.event_term) {
        j["event_term"] = dotted(*on.event_term);
        if (on.event_term->modifier != fuzzy::Modifier::none) {
            j["event_modifier"] = fuzzy::modifier_name(on.event_term->modifier);
        }
    }
    return j;
}

agents::ActionSpec action_from_json(const SystemConfig& config, const json& j) {
    const std::string kind = j.at("do").get<std::string>();
    if (kind == "send") {
        agents::SendSpec send;
        send.performative =
            protocol::performative_from_name(j.at("performative").get<std::string>());
        if (j.contains("reply") && j.at("reply").get<bool>()) {
            send.target = agents::SendSpec::Target::reply_to_source;
        } else if (j.contains("community")) {
            send.target = agents::SendSpec::Target::community;
            send.destination = j.at("community").get<std::string>();
        } else {
            send.target = agents::SendSpec::Target::agent;
            send.destination = j.at("to").get<std::string>();
        }
        if (j.contains("mtype")) send.mtype = j.at("mtype").get<int>();
        if (j.contains("ack")) send.ack_required = j.at("ack").get<bool>();
        const json& content = j.at("content");
        if (content.contains("term")) {
            send.content_source = agents::SendSpec::ContentSource::term_degree;
            send.content_term = parse_term_ref(config, content.at("term").get<std::string>(),
                                               modifier_field(content, "modifier"));
        } else if (content.contains("event") && content.at("event").get<bool>()) {
            send.content_source = agents::SendSpec::ContentSource::event_degree;
        } else {
            send.content_source = agents::SendSpec::ContentSource::constant;
            send.content_constant = fuzzy::Degree(content.at("constant").get<double>());
        }
        if (j.contains("topic")) send.topic = j.at("topic").get<std::string>();
        if (j.contains("body")) {
            send.body = protocol::body_kind_from_name(j.at("body").get<std::string>());
        }
        return send;
    }
    if (kind == "effect") {
        agents::EffectSpec effect;
        effect.variable = j.at("variable").get<std::string>();
        if (j.contains("term")) {
            effect.kind = agents::EffectSpec::Kind::consequent;
            effect.term =
                canonical_term(config, effect.variable, j.at("term").get<std::string>());
        } else {
            effect.kind = agents::EffectSpec::Kind::constant;
            effect.constant = j.at("value").get<double>();
        }
        return effect;
    }
    if (kind == "internal") {
        agents::InternalSpec internal;
        internal.key = j.at("key").get<std::string>();
        if (j.contains("degree")) {
            internal.value = fuzzy::Degree(j.at("degree").get<double>());
        } else {
            internal.value = j.at("value").get<double>();
        }
        if (j.contains("state")) internal.state_slot = j.at("state").get<bool>();
        return internal;
    }
    throw ConfigError("unknown action kind: " + kind);
}

ordered_json action_to_json(const agents::ActionSpec& spec) {
    ordered_json j;
    if (const auto* send = std::get_if<agents::SendSpec>(&spec)) {
        j["do"] = "send";
        j["performative"] = protocol::performative_name(send->performative);
        switch (send->target) {
        case agents::SendSpec::Target::reply_to_source:
            j["reply"] = true;
            break;
        case agents::SendSpec::Target::community:
            j["community"] = send->destination;
            break;
        case agents::SendSpec::Target::agent:
            j["to"] = send->destination;
            break;
        }
        if (send->mtype != 0) j["mtype"] = send->mtype;
        if (send->ack_required) j["ack"] = true;
        ordered_json content;
        switch (send->content_source) {
        case agents::SendSpec::ContentSource::term_degree:
            content["term"] = dotted(send->content_term);
            if (send->content_term.modifier != fuzzy::Modifier::none) {
                content["modifier"] = fuzzy::modifier_name(send->content_term.modifier);
            }
            break;
        case agents::SendSpec::ContentSource::event_degree:
            content["event"] = true;
            break;
        case agents::SendSpec::ContentSource::constant:
            content["constant"] = send->content_constant.value();
            break;
        }
        j["content"] = content;
        if (!send->topic.empty()) j["topic"] = send->topic;
        if (send->body != protocol::BodyKind::value) {
            j["body"] = protocol::body_kind_name(send->body);
        }
        return j;
    }
    if (const auto* effect = std::get_if<agents::EffectSpec>(&spec)) {
        j["do"] = "effect";
        j["variable"] = effect->variable;
        if (effect->kind == agents::EffectSpec::Kind::consequent) {
            j["term"] = effect->term;
        } else {
            j["value"] = effect->constant;
        }
        return j;
    }
    const auto& internal = std::get<agents::InternalSpec>(spec);
    j["do"] = "internal";
    j["key"] = internal.key;
    if (const auto* degree = std::get_if<fuzzy::Degree>(&internal.value)) {
        j["degree"] = degree->value();
    } else {
        j["value"] = std::get<double>(internal.value);
    }
    if (internal.state_slot) j["state"] = true;
    return j;
}

RuleBinding rule_from_json(const SystemConfig& config, const json& j) {
    RuleBinding binding;
    binding.agent = j.at("agent").get<std::string>();
    agents::DecisionRule& rule = binding.rule;
    rule.id = j.at("id").get<std::string>();
    rule.on = pattern_from_json(config, j.at("on"));
    if (j.contains("when")) {
        const json& w = j.at("when");
        agents::Condition when;
        if (w.contains("term")) {
            when.kind = agents::Condition::Kind::term;
            when.term = parse_term_ref(config, w.at("term").get<std::string>(),
                                       modifier_field(w, "modifier"));
        } else {
            when.kind = agents::Condition::Kind::constant;
            when.constant = fuzzy::Degree(w.at("constant").get<double>());
        }
        rule.when = when;
    }
    for (const auto& action : j.at("then")) {
        rule.actions.push_back(action_from_json(config, action));
    }
    if (j.contains("threshold")) {
        rule.threshold = fuzzy::Degree(j.at("threshold").get<double>());
    }
    if (j.contains("category")) {
        rule.category = agents::category_from_name(j.at("category").get<std::string>());
    }
    return binding;
}

ordered_json rule_to_json(const RuleBinding& binding) {
    const agents::DecisionRule& rule = binding.rule;
    ordered_json j;
    j["id"] = rule.id;
    j["agent"] = binding.agent;
    j["on"] = pattern_to_json(rule.on);
    if (rule.when) {
        ordered_json w;
        if (rule.when->kind == agents::Condition::Kind::term) {
            w["term"] = dotted(rule.when->term);
            if (rule.when->term.modifier != fuzzy::Modifier::none) {
                w["modifier"] = fuzzy::modifier_name(rule.when->term.modifier);
            }
        } else {
            w["constant"] = rule.when->constant.value();
        }
        j["when"] = w;
    }
    ordered_json then = ordered_json::array();
    for (const auto& action : rule.actions) then.push_back(action_to_json(action));
    j["then"] = then;
    j["threshold"] = rule.threshold.value();
    j["category"] = agents::category_name(rule.category);
    return j;
}

const fuzzy::LinguisticVariable* find_variable(const SystemConfig& config,
                                               const std::string& name) {
    for (const auto& variable : config.variables) {
        if (variable.name() == name) return &variable;
    }
    return nullptr;
}

void require_term(const SystemConfig& config, const fuzzy::TermRef& ref,
                  const std::string& where) {
    const auto* variable = find_variable(config, ref.variable);
    if (variable == nullptr) {
        throw ConfigError(where + ": unknown variable " + ref.variable);
    }
    if (!variable->has_term(ref.term)) {
        throw ConfigError(where + ": variable " + ref.variable + " has no term " +
                          ref.term);
    }
}

} // namespace

SystemConfig config_from_json(const json& j) {
    SystemConfig config;
    if (j.contains("engine")) {
        const json& engine = j.at("engine");
        if (engine.contains("resolution")) {
            config.engine.resolution = engine.at("resolution").get<std::size_t>();
        }
        if (engine.contains("tnorm")) {
            config.engine.tnorm =
                fuzzy::t_norm_from_name(engine.at("tnorm").get<std::string>());
        }
        if (engine.contains("tconorm")) {
            config.engine.tconorm =
                fuzzy::t_conorm_from_name(engine.at("tconorm").get<std::string>());
        }
        if (engine.contains("implication")) {
            config.engine.implication =
                fuzzy::implication_from_name(engine.at("implication").get<std::string>());
        }
    }

    for (const auto& v : j.value("variables", json::array())) {
        const std::string name = v.at("name").get<std::string>();
        const json& u = v.at("universe");
        const std::size_t resolution =
            u.contains("resolution") ? u.at("resolution").get<std::size_t>()
                                     : config.engine.resolution;
        fuzzy::Universe universe(name, u.at("low").get<double>(),
                                 u.at("high").get<double>(), resolution);
        std::vector<fuzzy::FuzzySubset> terms;
        for (const auto& t : v.at("terms")) {
            terms.push_back(fuzzy::FuzzySubset{
                t.at("label").get<std::string>(),
                fuzzy::MembershipFunction(
                    fuzzy::shape_from_name(t.at("shape").get<std::string>()),
                    t.at("params").get<std::vector<double>>())});
        }
        config.variables.emplace_back(name, std::move(universe), std::move(terms));
        if (v.contains("aliases")) {
            config.aliases[name] =
                v.at("aliases").get<std::map<std::string, std::string>>();
        }
    }

    for (const auto& m : j.value("message_types", json::array())) {
        config.message_types.push_back(protocol::MessageType{
            m.at("code").get<int>(), m.value("meaning", std::string{})});
    }
    for (const auto& r : j.value("roles", json::array())) {
        config.roles.push_back(
            org::Role{r.at("id").get<std::string>(), r.value("description", std::string{})});
    }
    for (const auto& c : j.value("communities", json::array())) {
        config.communities.push_back(org::Community{c.at("id").get<std::string>(),
                                                    {},
                                                    c.at("main_role").get<std::string>(),
                                                    c.value("objective", std::string{})});
    }
    if (j.contains("organization")) {
        const json& o = j.at("organization");
        if (o.contains("activation_threshold")) {
            config.organization.activation_threshold =
                fuzzy::Degree(o.at("activation_threshold").get<double>());
        }
        if (o.contains("decay")) config.organization.decay = o.at("decay").get<double>();
        if (o.contains("reinforcement")) {
            config.organization.reinforcement =
                fuzzy::Degree(o.at("reinforcement").get<double>());
        }
        if (o.contains("initial_main_degree")) {
            config.organization.initial_main_degree =
                fuzzy::Degree(o.at("initial_main_degree").get<double>());
        }
    }
    if (j.contains("protocol")) {
        config.obligation_timeout =
            j.at("protocol").value("obligation_timeout", std::int64_t{10});
    }

    for (const auto& a : j.value("agents", json::array())) {
        AgentConfig agent;
        agent.name = a.at("name").get<std::string>();
        agent.membership = a.value("membership", 1.0);
        agent.variable = a.value("variable", std::string{});
        agent.community = a.at("community").get<std::string>();
        if (a.contains("affinities")) {
            agent.affinities = a.at("affinities").get<std::map<std::string, double>>();
        }
        config.agents.push_back(std::move(agent));
    }

    for (const auto& r : j.value("rules", json::array())) {
        config.rules.push_back(rule_from_json(config, r));
    }
    return config;
}

ordered_json config_to_json(const SystemConfig& config) {
    ordered_json j;
    j["engine"] = {{"resolution", config.engine.resolution},
                   {"tnorm", fuzzy::t_norm_name(config.engine.tnorm)},
                   {"tconorm", fuzzy::t_conorm_name(config.engine.tconorm)},
                   {"implication", fuzzy::implication_name(config.engine.implication)}};

    ordered_json variables = ordered_json::array();
    for (const auto& variable : config.variables) {
        ordered_json v;
        v["name"] = variable.name();
        v["universe"] = {{"low", variable.universe().low()},
                         {"high", variable.universe().high()},
                         {"resolution", variable.universe().resolution()}};
        ordered_json terms = ordered_json::array();
        for (const auto& term : variable.terms()) {
            terms.push_back({{"label", term.label},
                             {"shape", fuzzy::shape_name(term.membership.shape())},
                             {"params", term.membership.params()}});
        }
        v["terms"] = terms;
        if (auto it = config.aliases.find(variable.name()); it != config.aliases.end()) {
            v["aliases"] = it->second;
        }
        variables.push_back(v);
    }
    j["variables"] = variables;

    ordered_json mtypes = ordered_json::array();
    for (const auto& m : config.message_types) {
        mtypes.push_back({{"code", m.code}, {"meaning", m.meaning}});
    }
    j["message_types"] = mtypes;

    ordered_json roles = ordered_json::array();
    for (const auto& r : config.roles) {
        roles.push_back({{"id", r.id}, {"description", r.description}});
    }
    j["roles"] = roles;

    ordered_json communities = ordered_json::array();
    for (const auto& c : config.communities) {
        communities.push_back(
            {{"id", c.id}, {"main_role", c.main_role}, {"objective", c.objective}});
    }
    j["communities"] = communities;

    j["organization"] = {
        {"activation_threshold", config.organization.activation_threshold.value()},
        {"decay", config.organization.decay},
        {"reinforcement", config.organization.reinforcement.value()},
        {"initial_main_degree", config.organization.initial_main_degree.value()}};
    j["protocol"] = {{"obligation_timeout", config.obligation_timeout}};

    ordered_json agents = ordered_json::array();
    for (const auto& agent : config.agents) {
        ordered_json a;
        a["name"] = agent.name;
        a["membership"] = agent.membership;
        if (!agent.variable.empty()) a["variable"] = agent.variable;
        a["community"] = agent.community;
        if (!agent.affinities.empty()) a["affinities"] = agent.affinities;
        agents.push_back(a);
    }
    j["agents"] = agents;

    ordered_json rules = ordered_json::array();
    for (const auto& binding : config.rules) rules.push_back(rule_to_json(binding));
    j["rules"] = rules;
    return j;
}

SystemConfig load_config(const std::string& path) {
    return config_from_json(read_json_file(path));
}

void save_config(const SystemConfig& config, const std::string& path) {
    write_text_file(path, config_to_json(config).dump(2) + "\n");
}

void validate_config(const SystemConfig& config) {
    std::set<std::string> variable_names;
    for (const auto& variable : config.variables) {
        if (!variable_names.insert(variable.name()).second) {
            throw ConfigError("duplicate variable: " + variable.name());
        }
    }
    for (const auto& [variable, table] : config.aliases) {
        const auto* v = find_variable(config, variable);
        if (v == nullptr) throw ConfigError("aliases for unknown variable: " + variable);
        for (const auto& [alias, target] : table) {
            if (!v->has_term(target)) {
                throw ConfigError("alias " + alias + " targets unknown term " + variable +
                                  "." + target);
            }
            if (v->has_term(alias)) {
                throw ConfigError("alias " + alias + " shadows a real term of " + variable);
            }
        }
    }

    // Role/community table consistency is what the organization constructor
    // enforces; building a throwaway state runs those checks.
    try {
        org::OrganizationState probe(config.roles, config.communities,
                                     config.organization);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("organization: ") + e.what());
    }

    std::set<int> mtype_codes;
    for (const auto& m : config.message_types) {
        if (!mtype_codes.insert(m.code).second) {
            throw ConfigError("duplicate message type code: " + std::to_string(m.code));
        }
    }

    auto community_exists = [&](const std::string& id) {
        for (const auto& c : config.communities) {
            if (c.id == id) return true;
        }
        return false;
    };

    std::set<std::string> agent_names;
    for (const auto& agent : config.agents) {
        if (agent.name.empty()) throw ConfigError("agent with empty name");
        if (!agent_names.insert(agent.name).second) {
            throw ConfigError("duplicate agent: " + agent.name);
        }
        if (!agent.variable.empty() && find_variable(config, agent.variable) == nullptr) {
            throw ConfigError("agent " + agent.name + " owns unknown variable " +
                              agent.variable);
        }
        if (agent.membership < 0.0 || agent.membership > 1.0) {
            throw ConfigError("agent " + agent.name + " membership outside [0,1]");
        }
        if (!community_exists(agent.community)) {
            throw ConfigError("agent " + agent.name + " registered into unknown community " +
                              agent.community);
        }
        for (const auto& [peer, degree] : agent.affinities) {
            if (degree < 0.0 || degree > 1.0) {
                throw ConfigError("agent " + agent.name + " affinity for " + peer +
                                  " outside [0,1]");
            }
        }
    }

    std::set<std::string> rule_ids;
    for (const auto& binding : config.rules) {
        const auto& rule = binding.rule;
        const std::string where = "rule " + rule.id;
        if (rule.id.empty()) throw ConfigError("rule with empty id");
        if (!rule_ids.insert(rule.id).second) throw ConfigError("duplicate " + where);
        if (!agent_names.contains(binding.agent)) {
            throw ConfigError(where + ": unknown agent " + binding.agent);
        }
        if (rule.actions.empty()) throw ConfigError(where + ": no actions");
        if (rule.on.kind == agents::EventKind::environment_changed) {
            if (!rule.on.variable.empty() &&
                find_variable(config, rule.on.variable) == nullptr) {
                throw ConfigError(where + ": watches unknown variable " + rule.on.variable);
            }
            for (const auto& term : rule.on.terms) {
                require_term(config, fuzzy::TermRef{rule.on.variable, term}, where);
            }
        }
        for (const auto& topic_variable : rule.on.variables) {
            if (find_variable(config, topic_variable) == nullptr) {
                throw ConfigError(where + ": filters on unknown variable " + topic_variable);
            }
        }
        if (rule.on.event_term) require_term(config, *rule.on.event_term, where);
        if (rule.when && rule.when->kind == agents::Condition::Kind::term) {
            require_term(config, rule.when->term, where);
        }
        for (const auto& action : rule.actions) {
            if (const auto* send = std::get_if<agents::SendSpec>(&action)) {
                if (send->target == agents::SendSpec::Target::agent &&
                    !agent_names.contains(send->destination)) {
                    throw ConfigError(where + ": sends to unknown agent " +
                                      send->destination);
                }
                if (send->target == agents::SendSpec::Target::community &&
                    !community_exists(send->destination)) {
                    throw ConfigError(where + ": diffuses to unknown community " +
                                      send->destination);
                }
                if (send->mtype != 0 && !mtype_codes.contains(send->mtype)) {
                    throw ConfigError(where + ": unregistered message type " +
                                      std::to_string(send->mtype));
                }
                if (send->content_source == agents::SendSpec::ContentSource::term_degree) {
                    require_term(config, send->content_term, where);
                }
            } else if (const auto* effect = std::get_if<agents::EffectSpec>(&action)) {
                if (effect->kind == agents::EffectSpec::Kind::consequent) {
                    require_term(config, fuzzy::TermRef{effect->variable, effect->term},
                                 where);
                    // The acting phase pools consequents on the agent's own
                    // variable only, so anything else would fail at runtime.
                    for (const auto& agent : config.agents) {
                        if (agent.name == binding.agent &&
                            agent.variable != effect->variable) {
                            throw ConfigError(where + ": fuzzy effect on " +
                                              effect->variable + " but " + binding.agent +
                                              " owns " +
                                              (agent.variable.empty() ? "no variable"
                                                                      : agent.variable));
                        }
                    }
                }
            }
        }
    }

    // Calibration anchors for the reference vocabulary: the rule strengths
    // and the reference run depend on these three membership values, so a
    // drifted configuration is rejected rather than silently producing other
    // numbers.
    struct Anchor {
        const char* variable;
        const char* term;
        double at;
        double expected;
    };
    const Anchor anchors[] = {{"temperature", "burning", 35.0, 0.45},
                              {"humidity", "dry", 10.0, 0.35},
                              {"humidity", "wet", 10.0, 0.61}};
    for (const auto& anchor : anchors) {
        const auto* variable = find_variable(config, anchor.variable);
        if (variable == nullptr || !variable->has_term(anchor.term)) continue;
        const double actual =
            variable->term(anchor.term).membership.evaluate(anchor.at).value();
        if (std::abs(actual - anchor.expected) > 0.005) {
            std::ostringstream message;
            message << "calibration: " << anchor.variable << "." << anchor.term << "("
                    << anchor.at << ") = " << actual << ", expected " << anchor.expected
                    << " within 0.005";
            throw ConfigError(message.str());
        }
    }
}

sim::Scenario scenario_from_json(const json& j) {
    sim::Scenario scenario;
    scenario.name = j.value("name", std::string{});
    scenario.max_ticks = j.at("max_ticks").get<std::int64_t>();
    for (const auto& entry : j.value("schedule", json::array())) {
        scenario.schedule.push_back(sim::Injection{entry.at("tick").get<std::int64_t>(),
                                                   entry.at("variable").get<std::string>(),
                                                   entry.at("value").get<double>()});
    }
    sim::validate_scenario(scenario);
    return scenario;
}

ordered_json scenario_to_json(const sim::Scenario& scenario) {
    ordered_json j;
    j["name"] = scenario.name;
    j["max_ticks"] = scenario.max_ticks;
    ordered_json schedule = ordered_json::array();
    for (const auto& injection : scenario.schedule) {
        schedule.push_back({{"tick", injection.tick},
                            {"variable", injection.variable},
                            {"value", injection.value}});
    }
    j["schedule"] = schedule;
    return j;
}

sim::Scenario load_scenario(const std::string& path) {
    try {
        return scenario_from_json(read_json_file(path));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    } catch (const json::exception& e) {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
}

} // namespace faf::app
