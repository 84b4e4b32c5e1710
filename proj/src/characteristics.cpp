#include "fractool/characteristics.hpp"

#include <cmath>
#include <stdexcept>

namespace fractool {

FirstOrderProblem::FirstOrderProblem(CanonicalExpr a, CanonicalExpr b, CanonicalExpr c)
    : a_coeff(std::move(a)), b_coeff(std::move(b)), c_rhs(std::move(c)) {
    if (a_coeff.is_zero() && b_coeff.is_zero())
        throw std::invalid_argument("a and b must not both vanish identically");
}

CharSystem characteristic_system(const FirstOrderProblem& p) {
    return [a = p.a_coeff, b = p.b_coeff, c = p.c_rhs](const CharState& y) {
        return CharState{a.evaluate_xt(y[0], y[1]), b.evaluate_xt(y[0], y[1]),
                         c.evaluate_xt(y[0], y[1])};
    };
}

namespace {

CharState rk4_step(const CharSystem& f, const CharState& y, double h) {
    auto axpy = [](const CharState& y, double c, const CharState& k) {
        return CharState{y[0] + c * k[0], y[1] + c * k[1], y[2] + c * k[2]};
    };
    const CharState k1 = f(y);
    const CharState k2 = f(axpy(y, h / 2.0, k1));
    const CharState k3 = f(axpy(y, h / 2.0, k2));
    const CharState k4 = f(axpy(y, h, k3));
    return CharState{y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                     y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
                     y[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])};
}

bool finite(const CharState& y) {
    return std::isfinite(y[0]) && std::isfinite(y[1]) && std::isfinite(y[2]);
}

}  // namespace

CharacteristicCurve integrate_characteristic(const CharSystem& system,
                                             const CharState& start,
                                             double s_end, double step) {
    if (step <= 0.0) throw std::domain_error("step must be positive");
    if (s_end < 0.0) throw std::domain_error("s_end must be nonnegative");
    CharacteristicCurve curve;
    curve.s_values.push_back(0.0);
    curve.points.push_back(start);
    double s = 0.0;
    CharState y = start;
    while (s < s_end) {
        const double h = std::min(step, s_end - s);
        y = rk4_step(system, y, h);
        s += h;
        if (!finite(y)) throw std::runtime_error("characteristic blow-up");
        curve.s_values.push_back(s);
        curve.points.push_back(y);
    }
    return curve;
}

ScalingInvariant::ScalingInvariant(double A_, double B_) : A(A_), B(B_) {
    if (A == 0.0 || B == 0.0)
        throw std::domain_error("degenerate scaling: A and B must be nonzero");
}

double ScalingInvariant::eval(double X, double T) const {
    return std::pow(X, B) / std::pow(T, A);
}

std::string ScalingInvariant::str() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "X^%g/T^%g", B, A);
    return buf;
}

FirstOrderProblem ScalingInvariant::problem() const {
    return FirstOrderProblem(CanonicalExpr::var_x().scaled(A),
                             CanonicalExpr::var_t().scaled(B),
                             CanonicalExpr());
}

ScalingInvariant scaling_invariant(double A, double B) { return ScalingInvariant(A, B); }

std::vector<double> solve_first_order(const FirstOrderProblem& p,
                                      const std::function<double(double)>& initial,
                                      double T0,
                                      const std::vector<std::pair<double, double>>& targets,
                                      double step, double s_budget) {
    const CharSystem sys = characteristic_system(p);
    std::vector<double> out;
    out.reserve(targets.size());
    for (const auto& [X, T] : targets) {
        if (std::abs(T - T0) < 1e-14) {
            out.push_back(initial(X));
            continue;
        }
        CharState y{X, T, 0.0};  // third slot accumulates int c ds
        const double b0 = sys(y)[1];
        if (b0 == 0.0) throw std::runtime_error("unreachable: b vanishes at target");
        // walk s so that T moves toward T0
        const double dir = (T0 - T) > 0.0 == b0 > 0.0 ? 1.0 : -1.0;
        double travelled = 0.0;
        bool reached = false;
        while (travelled < s_budget) {
            const CharState next = rk4_step(sys, y, dir * step);
            if (!finite(next)) throw std::runtime_error("characteristic blow-up");
            if ((next[1] - T0) * (y[1] - T0) <= 0.0) {
                // crossing inside this step: bisect the partial step length
                double lo = 0.0, hi = step;
                CharState yc = next;
                for (int it = 0; it < 60; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    yc = rk4_step(sys, y, dir * mid);
                    ((yc[1] - T0) * (y[1] - T0) <= 0.0 ? hi : lo) = mid;
                }
                y = yc;
                reached = true;
                break;
            }
            y = next;
            travelled += step;
        }
        if (!reached) throw std::runtime_error("unreachable: T0 not hit within s-budget");
        // backward accumulation: u(target) = u(initial point) - int c ds walked
        out.push_back(initial(y[0]) - y[2]);
    }
    return out;
}

}  // namespace fractool
