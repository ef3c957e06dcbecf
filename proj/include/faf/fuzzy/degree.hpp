#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace faf::fuzzy {

/// A truth value in [0, 1]. Construction rejects NaN and anything outside
/// the unit interval beyond a small floating-point guard band; values inside
/// the band are snapped to the interval, so a Degree is always valid.
class Degree {
public:
    Degree() = default;

    explicit Degree(double v) : value_(checked(v)) {}

    double value() const { return value_; }

    auto operator<=>(const Degree&) const = default;

private:
    static double checked(double v);

    double value_ = 0.0;
};

enum class TNorm { minimum, product };
enum class TConorm { maximum, probabilistic_sum };

enum class Modifier { none, weakening, strengthening };

// Connectives. The defaults (min / max / 1-x) are the ones used everywhere
// in the shipped configuration; the product pair is selectable per config.
Degree t_norm(Degree a, Degree b, TNorm kind = TNorm::minimum);
Degree t_conorm(Degree a, Degree b, TConorm kind = TConorm::maximum);
Degree negate(Degree a);

// Hedges: strengthening is concentration (d^2), weakening is dilation (sqrt d).
Degree apply_modifier(Modifier m, Degree d);

enum class Implication { godel, mamdani };

Degree implication(Degree a, Degree b, Implication method);

// Stable names for serialized configurations. The *_from_name functions
// throw std::invalid_argument on anything unrecognized.
std::string t_norm_name(TNorm kind);
TNorm t_norm_from_name(const std::string& name);
std::string t_conorm_name(TConorm kind);
TConorm t_conorm_from_name(const std::string& name);
std::string modifier_name(Modifier m);
Modifier modifier_from_name(const std::string& name);
std::string implication_name(Implication method);
Implication implication_from_name(const std::string& name);

} // namespace faf::fuzzy
