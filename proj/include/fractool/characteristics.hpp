#pragma once

#include <array>
#include <functional>
#include <vector>

#include "fractool/canonical.hpp"

namespace fractool {

// Coefficients of a(x,t) u_x^b + b(x,t) u_t^a = c(x,t) in canonical variables.
struct FirstOrderProblem {
    CanonicalExpr a_coeff;
    CanonicalExpr b_coeff;
    CanonicalExpr c_rhs;

    FirstOrderProblem(CanonicalExpr a, CanonicalExpr b, CanonicalExpr c);
};

using CharState = std::array<double, 3>;  // (X, T, u)
using CharSystem = std::function<CharState(const CharState&)>;

struct CharacteristicCurve {
    std::vector<double> s_values;
    std::vector<CharState> points;
};

// The autonomous system dX/ds = a, dT/ds = b, du/ds = c.
CharSystem characteristic_system(const FirstOrderProblem& p);

// Fixed-step RK4 from s = 0 to s_end (final partial step if needed).
CharacteristicCurve integrate_characteristic(const CharSystem& system,
                                             const CharState& start,
                                             double s_end, double step);

// Invariant of the scaling problem A X u_X + B T u_T = 0. For (A,B) = (1,2)
// this is X^2/T, twice the classical x^2/(2t) form at order 1 -- a constant
// multiple, hence the same invariant.
struct ScalingInvariant {
    double A;
    double B;

    ScalingInvariant(double A_, double B_);
    double eval(double X, double T) const;
    std::string str() const;
    FirstOrderProblem problem() const;  // A X u_X + B T u_T = 0
};

ScalingInvariant scaling_invariant(double A, double B);

// Characteristic solve: integrate backward from each target to the initial
// line T = T0, read off the initial value, add the accumulated source.
std::vector<double> solve_first_order(const FirstOrderProblem& p,
                                      const std::function<double(double)>& initial,
                                      double T0,
                                      const std::vector<std::pair<double, double>>& targets,
                                      double step = 1e-3, double s_budget = 50.0);

}  // namespace fractool
