#include "faf/fuzzy/membership.hpp"

#include <cmath>
#include <cstddef>

namespace faf::fuzzy {

std::string shape_name(Shape s) {
    switch (s) {
    case Shape::triangular: return "triangular";
    case Shape::trapezoidal: return "trapezoidal";
    case Shape::ramp_up: return "ramp-up";
    case Shape::ramp_down: return "ramp-down";
    }
    throw std::logic_error("unknown shape");
}

Shape shape_from_name(const std::string& name) {
    if (name == "triangular") return Shape::triangular;
    if (name == "trapezoidal") return Shape::trapezoidal;
    if (name == "ramp-up") return Shape::ramp_up;
    if (name == "ramp-down") return Shape::ramp_down;
    throw std::invalid_argument("unknown membership shape: " + name);
}

namespace {

std::size_t expected_params(Shape s) {
    switch (s) {
    case Shape::triangular: return 3;
    case Shape::trapezoidal: return 4;
    case Shape::ramp_up:
    case Shape::ramp_down: return 2;
    }
    throw std::logic_error("unknown shape");
}

// Linear interpolation on a rising edge [a, b]; callers guarantee a < x < b.
double rise(double a, double b, double x) {
    return (x - a) / (b - a);
}

} // namespace

MembershipFunction::MembershipFunction(Shape shape, std::vector<double> params)
    : shape_(shape), params_(std::move(params)) {
    if (params_.size() != expected_params(shape_)) {
        throw std::invalid_argument("membership shape " + shape_name(shape_) + " needs " +
                                    std::to_string(expected_params(shape_)) + " parameters");
    }
    for (double p : params_) {
        if (!std::isfinite(p)) {
            throw std::invalid_argument("membership parameter is not finite");
        }
    }
    for (std::size_t i = 1; i < params_.size(); ++i) {
        if (params_[i] < params_[i - 1]) {
            throw std::invalid_argument("membership parameters must be non-decreasing");
        }
    }
}

MembershipFunction MembershipFunction::triangular(double a, double b, double c) {
    return MembershipFunction(Shape::triangular, {a, b, c});
}

MembershipFunction MembershipFunction::trapezoidal(double a, double b, double c, double d) {
    return MembershipFunction(Shape::trapezoidal, {a, b, c, d});
}

MembershipFunction MembershipFunction::ramp_up(double a, double b) {
    return MembershipFunction(Shape::ramp_up, {a, b});
}

MembershipFunction MembershipFunction::ramp_down(double a, double b) {
    return MembershipFunction(Shape::ramp_down, {a, b});
}

Degree MembershipFunction::evaluate(double x) const {
    if (std::isnan(x)) {
        throw std::invalid_argument("membership input is NaN");
    }
    // Breakpoints are compared before any division so degenerate (zero-width)
    // edges evaluate as steps and breakpoint values are exact.
    switch (shape_) {
    case Shape::triangular: {
        const double a = params_[0], b = params_[1], c = params_[2];
        if (x == b) return Degree(1.0);
        if (x <= a || x >= c) return Degree(0.0);
        if (x < b) return Degree(rise(a, b, x));
        return Degree(rise(c, b, x)); // falling edge, b < x < c
    }
    case Shape::trapezoidal: {
        const double a = params_[0], b = params_[1], c = params_[2], d = params_[3];
        if (x >= b && x <= c) return Degree(1.0);
        if (x <= a || x >= d) return Degree(0.0);
        if (x < b) return Degree(rise(a, b, x));
        return Degree(rise(d, c, x)); // falling edge, c < x < d
    }
    case Shape::ramp_up: {
        const double a = params_[0], b = params_[1];
        if (x >= b) return Degree(1.0);
        if (x <= a) return Degree(0.0);
        return Degree(rise(a, b, x));
    }
    case Shape::ramp_down: {
        const double a = params_[0], b = params_[1];
        if (x <= a) return Degree(1.0);
        if (x >= b) return Degree(0.0);
        return Degree(rise(b, a, x));
    }
    }
    throw std::logic_error("unknown shape");
}

Degree eval_membership(const MembershipFunction& mf, double x) {
    return mf.evaluate(x);
}

} // namespace faf::fuzzy
