#include "faf/fuzzy/sets.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace faf::fuzzy {

Universe::Universe(std::string name, double low, double high, std::size_t resolution)
    : name_(std::move(name)), low_(low), high_(high), resolution_(resolution) {
    if (!std::isfinite(low_) || !std::isfinite(high_)) {
        throw std::invalid_argument("universe bounds must be finite");
    }
    if (low_ >= high_) {
        throw std::invalid_argument("universe '" + name_ + "' needs low < high");
    }
    if (resolution_ < 2) {
        throw std::invalid_argument("universe '" + name_ + "' needs at least two grid points");
    }
}

double Universe::point(std::size_t i) const {
    if (i >= resolution_) {
        throw std::out_of_range("grid index out of range");
    }
    if (i == resolution_ - 1) {
        return high_; // exact at the upper bound, no rounding drift
    }
    return low_ + static_cast<double>(i) * (high_ - low_) / static_cast<double>(resolution_ - 1);
}

LinguisticVariable::LinguisticVariable(std::string name, Universe universe,
                                       std::vector<FuzzySubset> terms)
    : name_(std::move(name)), universe_(std::move(universe)), terms_(std::move(terms)) {
    if (terms_.empty()) {
        throw std::invalid_argument("variable '" + name_ + "' needs at least one term");
    }
    std::set<std::string> seen;
    for (const auto& t : terms_) {
        if (!seen.insert(t.label).second) {
            throw std::invalid_argument("variable '" + name_ + "' has duplicate term '" +
                                        t.label + "'");
        }
    }
}

bool LinguisticVariable::has_term(const std::string& label) const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [&](const FuzzySubset& t) { return t.label == label; });
}

const FuzzySubset& LinguisticVariable::term(const std::string& label) const {
    for (const auto& t : terms_) {
        if (t.label == label) return t;
    }
    throw std::invalid_argument("variable '" + name_ + "' has no term '" + label + "'");
}

DiscreteFuzzySet::DiscreteFuzzySet(Universe universe, std::vector<Degree> degrees)
    : universe_(std::move(universe)), degrees_(std::move(degrees)) {
    if (degrees_.size() != universe_.resolution()) {
        throw std::invalid_argument("degree vector does not match the universe grid");
    }
}

DiscreteFuzzySet DiscreteFuzzySet::zero(const Universe& universe) {
    return DiscreteFuzzySet(universe, std::vector<Degree>(universe.resolution(), Degree(0.0)));
}

DiscreteFuzzySet DiscreteFuzzySet::complement() const {
    std::vector<Degree> out;
    out.reserve(degrees_.size());
    for (Degree d : degrees_) {
        out.push_back(negate(d));
    }
    return DiscreteFuzzySet(universe_, std::move(out));
}

namespace {

void require_same_universe(const Universe& a, const Universe& b) {
    if (!(a == b)) {
        throw std::invalid_argument("fuzzy sets live on different universes");
    }
}

} // namespace

DiscreteFuzzySet DiscreteFuzzySet::intersect(const DiscreteFuzzySet& other, TNorm norm) const {
    require_same_universe(universe_, other.universe_);
    std::vector<Degree> out;
    out.reserve(degrees_.size());
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
        out.push_back(t_norm(degrees_[i], other.degrees_[i], norm));
    }
    return DiscreteFuzzySet(universe_, std::move(out));
}

DiscreteFuzzySet DiscreteFuzzySet::unite(const DiscreteFuzzySet& other, TConorm conorm) const {
    require_same_universe(universe_, other.universe_);
    std::vector<Degree> out;
    out.reserve(degrees_.size());
    for (std::size_t i = 0; i < degrees_.size(); ++i) {
        out.push_back(t_conorm(degrees_[i], other.degrees_[i], conorm));
    }
    return DiscreteFuzzySet(universe_, std::move(out));
}

FuzzyRelation::FuzzyRelation(Universe from, Universe to, std::vector<std::vector<Degree>> entries)
    : from_(std::move(from)), to_(std::move(to)), entries_(std::move(entries)) {
    if (entries_.size() != from_.resolution()) {
        throw std::invalid_argument("relation row count does not match the source universe");
    }
    for (const auto& row : entries_) {
        if (row.size() != to_.resolution()) {
            throw std::invalid_argument("relation column count does not match the target universe");
        }
    }
}

DiscreteFuzzySet discretize(const MembershipFunction& mf, const Universe& universe) {
    std::vector<Degree> out;
    out.reserve(universe.resolution());
    for (std::size_t i = 0; i < universe.resolution(); ++i) {
        out.push_back(mf.evaluate(universe.point(i)));
    }
    return DiscreteFuzzySet(universe, std::move(out));
}

FuzzyRelation build_relation(const DiscreteFuzzySet& a, const DiscreteFuzzySet& b,
                             Implication impl) {
    std::vector<std::vector<Degree>> entries(a.universe().resolution());
    for (std::size_t i = 0; i < a.universe().resolution(); ++i) {
        auto& row = entries[i];
        row.reserve(b.universe().resolution());
        for (std::size_t j = 0; j < b.universe().resolution(); ++j) {
            row.push_back(implication(a.at(i), b.at(j), impl));
        }
    }
    return FuzzyRelation(a.universe(), b.universe(), std::move(entries));
}

DiscreteFuzzySet generalized_modus_ponens(const DiscreteFuzzySet& observation,
                                          const FuzzyRelation& relation) {
    require_same_universe(observation.universe(), relation.from());
    std::vector<Degree> out(relation.to().resolution(), Degree(0.0));
    for (std::size_t i = 0; i < relation.from().resolution(); ++i) {
        const Degree a = observation.at(i);
        if (a.value() == 0.0) continue; // min(0, r) never raises the max
        for (std::size_t j = 0; j < relation.to().resolution(); ++j) {
            const Degree composed = t_norm(a, relation.at(i, j), TNorm::minimum);
            out[j] = t_conorm(out[j], composed, TConorm::maximum);
        }
    }
    return DiscreteFuzzySet(relation.to(), std::move(out));
}

double clamp_to_universe(const Universe& universe, double x) {
    return std::clamp(x, universe.low(), universe.high());
}

std::map<std::string, Degree> fuzzify(const LinguisticVariable& variable, double x) {
    const double clamped = clamp_to_universe(variable.universe(), x);
    std::map<std::string, Degree> out;
    for (const auto& term : variable.terms()) {
        out.emplace(term.label, term.membership.evaluate(clamped));
    }
    return out;
}

DiscreteFuzzySet clip(const DiscreteFuzzySet& set, Degree strength) {
    std::vector<Degree> out;
    out.reserve(set.degrees().size());
    for (Degree d : set.degrees()) {
        out.push_back(t_norm(d, strength, TNorm::minimum));
    }
    return DiscreteFuzzySet(set.universe(), std::move(out));
}

DiscreteFuzzySet clip(const FuzzySubset& consequent, const Universe& universe, Degree strength) {
    return clip(discretize(consequent.membership, universe), strength);
}

DiscreteFuzzySet aggregate(const std::vector<DiscreteFuzzySet>& sets) {
    if (sets.empty()) {
        throw std::invalid_argument("cannot aggregate zero sets");
    }
    DiscreteFuzzySet acc = sets.front();
    for (std::size_t i = 1; i < sets.size(); ++i) {
        acc = acc.unite(sets[i], TConorm::maximum);
    }
    return acc;
}

double defuzzify_centroid(const DiscreteFuzzySet& set) {
    double mass = 0.0;
    double moment = 0.0;
    for (std::size_t i = 0; i < set.universe().resolution(); ++i) {
        const double mu = set.at(i).value();
        mass += mu;
        moment += mu * set.universe().point(i);
    }
    if (mass == 0.0) {
        throw EmptyAggregateError();
    }
    return moment / mass;
}

bool has_mass(const DiscreteFuzzySet& set) {
    return std::any_of(set.degrees().begin(), set.degrees().end(),
                       [](Degree d) { return d.value() > 0.0; });
}

} // namespace faf::fuzzy
