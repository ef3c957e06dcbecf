#pragma once

#include <string>
#include <vector>

#include "faf/fuzzy/degree.hpp"

namespace faf::fuzzy {

enum class Shape { triangular, trapezoidal, ramp_up, ramp_down };

std::string shape_name(Shape s);
Shape shape_from_name(const std::string& name);

/// Piecewise-linear membership function. Parameters must be non-decreasing;
/// that is checked once at construction so evaluation can never fail.
///
///   triangular(a,b,c)     0 outside [a,c], 1 at b
///   trapezoidal(a,b,c,d)  0 outside [a,d], 1 on [b,c]
///   ramp_up(a,b)          0 below a, 1 above b
///   ramp_down(a,b)        1 below a, 0 above b
class MembershipFunction {
public:
    MembershipFunction(Shape shape, std::vector<double> params);

    static MembershipFunction triangular(double a, double b, double c);
    static MembershipFunction trapezoidal(double a, double b, double c, double d);
    static MembershipFunction ramp_up(double a, double b);
    static MembershipFunction ramp_down(double a, double b);

    Degree evaluate(double x) const;

    Shape shape() const { return shape_; }
    const std::vector<double>& params() const { return params_; }

    bool operator==(const MembershipFunction&) const = default;

private:
    Shape shape_;
    std::vector<double> params_;
};

Degree eval_membership(const MembershipFunction& mf, double x);

} // namespace faf::fuzzy
