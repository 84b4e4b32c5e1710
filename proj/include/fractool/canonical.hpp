#pragma once

#include <string>
#include <vector>

#include "fractool/fraccalc.hpp"

namespace fractool {

// coeff * X^m * T^n * exp(px X + pt T)
struct CanonicalTerm {
    double coeff = 0.0;
    int xpow = 0;
    int tpow = 0;
    double expx = 0.0;
    double expt = 0.0;
};

// Polynomial-exponential expressions in the canonical variables
// X = x^b / Gamma(1+b), T = t^a / Gamma(1+a). Terms are kept sorted with
// like terms merged; an all-below-threshold expression counts as zero.
class CanonicalExpr {
public:
    CanonicalExpr() = default;
    explicit CanonicalExpr(std::vector<CanonicalTerm> terms);

    static CanonicalExpr constant(double c);
    static CanonicalExpr monomial(double coeff, int xpow, int tpow,
                                  double expx = 0.0, double expt = 0.0);
    static CanonicalExpr var_x();
    static CanonicalExpr var_t();

    const std::vector<CanonicalTerm>& terms() const { return terms_; }
    bool is_zero(double tol = 1e-12) const;
    double max_abs_coeff() const;

    CanonicalExpr operator+(const CanonicalExpr& o) const;
    CanonicalExpr operator-(const CanonicalExpr& o) const;
    CanonicalExpr operator*(const CanonicalExpr& o) const;
    CanonicalExpr scaled(double c) const;
    CanonicalExpr pow(int n) const;

    // X -> ax X + bx T + cx, T -> at X + bt T + ct
    CanonicalExpr substitute_linear(double ax, double bx, double cx,
                                    double at, double bt, double ct) const;

    double evaluate_xt(double X, double T) const;
    double evaluate(double x, double t, FractionalOrder alpha, FractionalOrder beta) const;

    // Round-trips through parse_expr at full precision.
    std::string str(int precision = 17) const;

private:
    std::vector<CanonicalTerm> terms_;
    void normalize();
};

// Canonical coordinates of a physical point.
std::pair<double, double> to_canonical(double x, double t,
                                       FractionalOrder alpha, FractionalOrder beta);

// Classical partial derivatives within the algebra (the chain-rule
// convention maps the fractional derivatives onto these exactly).
CanonicalExpr formal_dX(const CanonicalExpr& e);
CanonicalExpr formal_dT(const CanonicalExpr& e);

// The competing power-rule convention, defined only on exponential-free
// expressions: T^n -> Gamma(1+na) / (Gamma(1+(n-1)a) Gamma(1+a)) T^{n-1}.
CanonicalExpr power_rule_dT(const CanonicalExpr& e, FractionalOrder alpha);
CanonicalExpr power_rule_dX(const CanonicalExpr& e, FractionalOrder beta);

// Ratio (power-rule coefficient)/(chain-rule coefficient) on X^m;
// equals 1 exactly at order 1.
double convention_gap(int m, FractionalOrder order);

// Heat operator residual d_T e - d_X^2 e, normalized.
CanonicalExpr heat_residual(const CanonicalExpr& e);

// Infix grammar over X, T, numbers, + - * ^ exp(...).
CanonicalExpr parse_expr(const std::string& text);

}  // namespace fractool
