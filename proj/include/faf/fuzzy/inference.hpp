#pragma once

#include <map>
#include <string>
#include <vector>

#include "faf/fuzzy/sets.hpp"

namespace faf::fuzzy {

// Reference to one term of a named variable, optionally modified.
struct TermRef {
    std::string variable;
    std::string term;
    Modifier modifier = Modifier::none;

    bool operator==(const TermRef&) const = default;
};

// IF premise_1 AND ... AND premise_n THEN conclusion.
struct MamdaniRule {
    std::string id;
    std::vector<TermRef> premises;
    TermRef conclusion;

    bool operator==(const MamdaniRule&) const = default;
};

struct RuleActivation {
    std::string rule_id;
    Degree strength;

    bool operator==(const RuleActivation&) const = default;
};

// A consequent contribution: one output term capped at the strength of the
// rule that produced it.
struct ConsequentClip {
    TermRef term;
    Degree strength;
};

// Rule base bound to its vocabulary. Construction checks that every term
// reference resolves and that all conclusions target one output variable.
class RuleSet {
public:
    RuleSet(std::vector<LinguisticVariable> variables, std::vector<MamdaniRule> rules);

    const std::vector<LinguisticVariable>& variables() const { return variables_; }
    const std::vector<MamdaniRule>& rules() const { return rules_; }

    bool has_variable(const std::string& name) const;
    const LinguisticVariable& variable(const std::string& name) const;
    const LinguisticVariable& output() const { return variables_[output_index_]; }

private:
    std::vector<LinguisticVariable> variables_;
    std::vector<MamdaniRule> rules_;
    std::size_t output_index_;
};

// Firing strength of every rule at the given crisp inputs, in rule order:
// fuzzify each premise (inputs clamp to their universes), apply the premise
// modifier, fold with the t-norm. Every premise variable must have an input.
std::vector<RuleActivation> rule_strengths(const RuleSet& rules,
                                           const std::map<std::string, double>& inputs,
                                           TNorm norm = TNorm::minimum);

// Back half of the pipeline, shared by direct inference and by agents that
// computed strengths from received degrees: discretize each contribution's
// term, clip at its strength, max-aggregate, take the centroid.
// Throws EmptyAggregateError when nothing contributes any mass.
double pool_centroid(const LinguisticVariable& output, const std::vector<ConsequentClip>& clips);

// Full Mamdani pipeline: strengths from crisp inputs, then pool_centroid.
// Throws EmptyAggregateError when no rule fires.
double infer_mamdani(const RuleSet& rules, const std::map<std::string, double>& inputs,
                     TNorm norm = TNorm::minimum);

} // namespace faf::fuzzy
