#include "faf/fuzzy/degree.hpp"

#include <algorithm>
#include <cmath>

namespace faf::fuzzy {

namespace {
constexpr double kGuard = 1e-9;
}

double Degree::checked(double v) {
    if (std::isnan(v)) {
        throw std::invalid_argument("degree is NaN");
    }
    if (v < -kGuard || v > 1.0 + kGuard) {
        throw std::invalid_argument("degree outside [0, 1]: " + std::to_string(v));
    }
    return std::clamp(v, 0.0, 1.0);
}

Degree t_norm(Degree a, Degree b, TNorm kind) {
    switch (kind) {
    case TNorm::product:
        return Degree(a.value() * b.value());
    case TNorm::minimum:
    default:
        return Degree(std::min(a.value(), b.value()));
    }
}

Degree t_conorm(Degree a, Degree b, TConorm kind) {
    switch (kind) {
    case TConorm::probabilistic_sum:
        return Degree(a.value() + b.value() - a.value() * b.value());
    case TConorm::maximum:
    default:
        return Degree(std::max(a.value(), b.value()));
    }
}

Degree negate(Degree a) {
    return Degree(1.0 - a.value());
}

Degree apply_modifier(Modifier m, Degree d) {
    switch (m) {
    case Modifier::strengthening:
        return Degree(d.value() * d.value());
    case Modifier::weakening:
        return Degree(std::sqrt(d.value()));
    case Modifier::none:
    default:
        return d;
    }
}

Degree implication(Degree a, Degree b, Implication method) {
    switch (method) {
    case Implication::godel:
        return a.value() <= b.value() ? Degree(1.0) : b;
    case Implication::mamdani:
    default:
        return t_norm(a, b);
    }
}

std::string t_norm_name(TNorm kind) {
    return kind == TNorm::minimum ? "min" : "product";
}

TNorm t_norm_from_name(const std::string& name) {
    if (name == "min") return TNorm::minimum;
    if (name == "product") return TNorm::product;
    throw std::invalid_argument("unknown t-norm: " + name);
}

std::string t_conorm_name(TConorm kind) {
    return kind == TConorm::maximum ? "max" : "probabilistic-sum";
}

TConorm t_conorm_from_name(const std::string& name) {
    if (name == "max") return TConorm::maximum;
    if (name == "probabilistic-sum") return TConorm::probabilistic_sum;
    throw std::invalid_argument("unknown t-conorm: " + name);
}

std::string modifier_name(Modifier m) {
    switch (m) {
    case Modifier::weakening:
        return "weakening";
    case Modifier::strengthening:
        return "strengthening";
    case Modifier::none:
    default:
        return "none";
    }
}

Modifier modifier_from_name(const std::string& name) {
    if (name == "none") return Modifier::none;
    if (name == "weakening") return Modifier::weakening;
    if (name == "strengthening") return Modifier::strengthening;
    throw std::invalid_argument("unknown modifier: " + name);
}

std::string implication_name(Implication method) {
    return method == Implication::godel ? "godel" : "mamdani";
}

Implication implication_from_name(const std::string& name) {
    if (name == "godel") return Implication::godel;
    if (name == "mamdani") return Implication::mamdani;
    throw std::invalid_argument("unknown implication: " + name);
}

} // namespace faf::fuzzy
