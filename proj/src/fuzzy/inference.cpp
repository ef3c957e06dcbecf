#include "faf/fuzzy/inference.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace faf::fuzzy {

namespace {

void require_resolvable(const RuleSet& rs, const TermRef& ref, const std::string& rule_id) {
    if (!rs.has_variable(ref.variable)) {
        throw std::invalid_argument("rule '" + rule_id + "' references unknown variable '" +
                                    ref.variable + "'");
    }
    if (!rs.variable(ref.variable).has_term(ref.term)) {
        throw std::invalid_argument("rule '" + rule_id + "' references unknown term '" +
                                    ref.variable + "." + ref.term + "'");
    }
}

} // namespace

RuleSet::RuleSet(std::vector<LinguisticVariable> variables, std::vector<MamdaniRule> rules)
    : variables_(std::move(variables)), rules_(std::move(rules)), output_index_(0) {
    if (variables_.empty()) {
        throw std::invalid_argument("rule set needs at least one variable");
    }
    if (rules_.empty()) {
        throw std::invalid_argument("rule set needs at least one rule");
    }
    std::set<std::string> names;
    for (const auto& v : variables_) {
        if (!names.insert(v.name()).second) {
            throw std::invalid_argument("duplicate variable '" + v.name() + "'");
        }
    }
    std::set<std::string> ids;
    for (const auto& r : rules_) {
        if (r.id.empty() || !ids.insert(r.id).second) {
            throw std::invalid_argument("rule ids must be unique and non-empty");
        }
        if (r.premises.empty()) {
            throw std::invalid_argument("rule '" + r.id + "' has no premises");
        }
        for (const auto& p : r.premises) {
            require_resolvable(*this, p, r.id);
        }
        require_resolvable(*this, r.conclusion, r.id);
        if (r.conclusion.variable != rules_.front().conclusion.variable) {
            throw std::invalid_argument("all rule conclusions must target one output variable");
        }
    }
    const std::string& out = rules_.front().conclusion.variable;
    for (std::size_t i = 0; i < variables_.size(); ++i) {
        if (variables_[i].name() == out) {
            output_index_ = i;
            break;
        }
    }
}

bool RuleSet::has_variable(const std::string& name) const {
    return std::any_of(variables_.begin(), variables_.end(),
                       [&](const LinguisticVariable& v) { return v.name() == name; });
}

const LinguisticVariable& RuleSet::variable(const std::string& name) const {
    for (const auto& v : variables_) {
        if (v.name() == name) return v;
    }
    throw std::invalid_argument("unknown variable '" + name + "'");
}

std::vector<RuleActivation> rule_strengths(const RuleSet& rules,
                                           const std::map<std::string, double>& inputs,
                                           TNorm norm) {
    std::vector<RuleActivation> out;
    out.reserve(rules.rules().size());
    for (const auto& rule : rules.rules()) {
        Degree strength(1.0); // t-norm identity
        for (const auto& premise : rule.premises) {
            const auto it = inputs.find(premise.variable);
            if (it == inputs.end()) {
                throw std::invalid_argument("rule '" + rule.id + "' needs an input for '" +
                                            premise.variable + "'");
            }
            const LinguisticVariable& var = rules.variable(premise.variable);
            const double x = clamp_to_universe(var.universe(), it->second);
            const Degree mu = var.term(premise.term).membership.evaluate(x);
            strength = t_norm(strength, apply_modifier(premise.modifier, mu), norm);
        }
        out.push_back({rule.id, strength});
    }
    return out;
}

double pool_centroid(const LinguisticVariable& output, const std::vector<ConsequentClip>& clips) {
    if (clips.empty()) {
        throw EmptyAggregateError();
    }
    std::vector<DiscreteFuzzySet> clipped;
    clipped.reserve(clips.size());
    for (const auto& c : clips) {
        DiscreteFuzzySet base = discretize(output.term(c.term.term).membership, output.universe());
        if (c.term.modifier != Modifier::none) {
            std::vector<Degree> modified;
            modified.reserve(base.degrees().size());
            for (Degree d : base.degrees()) {
                modified.push_back(apply_modifier(c.term.modifier, d));
            }
            base = DiscreteFuzzySet(output.universe(), std::move(modified));
        }
        clipped.push_back(clip(base, c.strength));
    }
    return defuzzify_centroid(aggregate(clipped));
}

double infer_mamdani(const RuleSet& rules, const std::map<std::string, double>& inputs,
                     TNorm norm) {
    const auto activations = rule_strengths(rules, inputs, norm);
    std::vector<ConsequentClip> clips;
    clips.reserve(activations.size());
    for (std::size_t i = 0; i < activations.size(); ++i) {
        clips.push_back({rules.rules()[i].conclusion, activations[i].strength});
    }
    return pool_centroid(rules.output(), clips);
}

} // namespace faf::fuzzy
