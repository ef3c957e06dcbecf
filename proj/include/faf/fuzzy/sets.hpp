#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "faf/fuzzy/degree.hpp"
#include "faf/fuzzy/membership.hpp"

namespace faf::fuzzy {

// Raised when defuzzification is asked for a set with no mass: no rule fired,
// so there is no output to report.
class EmptyAggregateError : public std::runtime_error {
public:
    EmptyAggregateError() : std::runtime_error("empty aggregate: no rule fired") {}
};

// Discretization grid for a real-valued quantity. `resolution` is the number
// of sample points; point i sits at low + i * (high - low) / (resolution - 1),
// so the first and last points land exactly on the bounds.
class Universe {
public:
    Universe(std::string name, double low, double high, std::size_t resolution);

    const std::string& name() const { return name_; }
    double low() const { return low_; }
    double high() const { return high_; }
    std::size_t resolution() const { return resolution_; }

    double point(std::size_t i) const;
    double step() const { return (high_ - low_) / static_cast<double>(resolution_ - 1); }

    bool contains(double x) const { return x >= low_ && x <= high_; }

    bool operator==(const Universe&) const = default;

private:
    std::string name_;
    double low_;
    double high_;
    std::size_t resolution_;
};

// A named term over a universe: the linguistic label plus its membership
// function ("cold" with a ramp over temperature, say).
struct FuzzySubset {
    std::string label;
    MembershipFunction membership;

    bool operator==(const FuzzySubset&) const = default;
};

// A variable together with the terms that partition its universe. Labels are
// unique; lookup by an unknown label throws.
class LinguisticVariable {
public:
    LinguisticVariable(std::string name, Universe universe, std::vector<FuzzySubset> terms);

    const std::string& name() const { return name_; }
    const Universe& universe() const { return universe_; }
    const std::vector<FuzzySubset>& terms() const { return terms_; }

    bool has_term(const std::string& label) const;
    const FuzzySubset& term(const std::string& label) const;

    bool operator==(const LinguisticVariable&) const = default;

private:
    std::string name_;
    Universe universe_;
    std::vector<FuzzySubset> terms_;
};

// Membership degrees sampled on a universe's grid; the vector always has
// exactly universe.resolution() entries.
class DiscreteFuzzySet {
public:
    DiscreteFuzzySet(Universe universe, std::vector<Degree> degrees);

    static DiscreteFuzzySet zero(const Universe& universe);

    const Universe& universe() const { return universe_; }
    const std::vector<Degree>& degrees() const { return degrees_; }
    Degree at(std::size_t i) const { return degrees_.at(i); }

    DiscreteFuzzySet complement() const;
    DiscreteFuzzySet intersect(const DiscreteFuzzySet& other, TNorm norm = TNorm::minimum) const;
    DiscreteFuzzySet unite(const DiscreteFuzzySet& other, TConorm conorm = TConorm::maximum) const;

    bool operator==(const DiscreteFuzzySet&) const = default;

private:
    Universe universe_;
    std::vector<Degree> degrees_;
};

// Binary fuzzy relation between two universes, stored row-major:
// entry (i, j) relates point i of `from` with point j of `to`.
class FuzzyRelation {
public:
    FuzzyRelation(Universe from, Universe to, std::vector<std::vector<Degree>> entries);

    const Universe& from() const { return from_; }
    const Universe& to() const { return to_; }
    Degree at(std::size_t i, std::size_t j) const { return entries_.at(i).at(j); }
    const std::vector<std::vector<Degree>>& entries() const { return entries_; }

    bool operator==(const FuzzyRelation&) const = default;

private:
    Universe from_;
    Universe to_;
    std::vector<std::vector<Degree>> entries_;
};

// Sample a membership function on a universe's grid.
DiscreteFuzzySet discretize(const MembershipFunction& mf, const Universe& universe);

// Lift "if A then B" to a relation: entry (i, j) = implication(A[i], B[j]).
FuzzyRelation build_relation(const DiscreteFuzzySet& a, const DiscreteFuzzySet& b,
                             Implication implication);

// Sup-min composition of an observation with a relation:
// result[j] = max over i of min(observation[i], R[i][j]).
DiscreteFuzzySet generalized_modus_ponens(const DiscreteFuzzySet& observation,
                                          const FuzzyRelation& relation);

// Degree of every term of the variable at crisp input x, keyed by label.
// Inputs outside the universe clamp to its bounds: a noisy sensor reading
// should degrade gracefully, not halt the loop.
std::map<std::string, Degree> fuzzify(const LinguisticVariable& variable, double x);

// Clamp x into the universe's bounds (the fuzzify convention, reusable by
// callers that need the same treatment for crisp inputs).
double clamp_to_universe(const Universe& universe, double x);

// Cap a set at a rule strength (pointwise min).
DiscreteFuzzySet clip(const DiscreteFuzzySet& set, Degree strength);
DiscreteFuzzySet clip(const FuzzySubset& consequent, const Universe& universe, Degree strength);

// Pointwise max of one or more sets over the same universe.
DiscreteFuzzySet aggregate(const std::vector<DiscreteFuzzySet>& sets);

// Centroid of the sampled set: sum(x_i * mu_i) / sum(mu_i).
// Throws EmptyAggregateError when the set has no mass.
double defuzzify_centroid(const DiscreteFuzzySet& set);

// True when at least one sample is positive, i.e. defuzzify_centroid would
// succeed.
bool has_mass(const DiscreteFuzzySet& set);

} // namespace faf::fuzzy
