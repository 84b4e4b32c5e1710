#include "fractool/symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace fractool {

Infinitesimals::Infinitesimals(std::array<double, 6> constants, CanonicalExpr source)
    : c(constants), a_term(std::move(source)) {
    if (!heat_residual(a_term).is_zero())
        throw std::invalid_argument("source term a(x,t) must solve the diffusion equation");
}

bool Generator::is_zero(double tol) const {
    return xi.is_zero(tol) && tau.is_zero(tol) && phi_linear.is_zero(tol) &&
           phi_source.is_zero(tol);
}

namespace {

// Gamma-ratio factors on the quadratic terms: t^{2a}/Gamma(1+2a) expressed
// through T^2 picks up Gamma^2(1+a)/Gamma(1+2a), likewise in x.
double kappa_tau(SymmetryMode mode, FractionalOrder alpha) {
    if (mode == SymmetryMode::Corrected) return 4.0;
    const double a = alpha.value();
    const double g = gamma_fn(1.0 + a);
    return 4.0 * g * g / gamma_fn(1.0 + 2.0 * a);
}

double kappa_phi(SymmetryMode mode, FractionalOrder beta) {
    if (mode == SymmetryMode::Corrected) return 1.0;
    const double b = beta.value();
    const double g = gamma_fn(1.0 + b);
    return g * g / gamma_fn(1.0 + 2.0 * b);
}

const CanonicalExpr kX = CanonicalExpr::var_x();
const CanonicalExpr kT = CanonicalExpr::var_t();

}  // namespace

Generator infinitesimals_to_generator(const Infinitesimals& inf, SymmetryMode mode,
                                      FractionalOrder alpha, FractionalOrder beta) {
    const auto& c = inf.c;
    Generator g;
    // xi = c1 + c4 X + 2 c5 T + 4 c6 X T
    g.xi = CanonicalExpr::constant(c[0]) + kX.scaled(c[3]) + kT.scaled(2.0 * c[4]) +
           (kX * kT).scaled(4.0 * c[5]);
    // tau = c2 + 2 c4 T + kappa_tau c6 T^2
    g.tau = CanonicalExpr::constant(c[1]) + kT.scaled(2.0 * c[3]) +
            (kT * kT).scaled(kappa_tau(mode, alpha) * c[5]);
    // phi = (c3 - c5 X - 2 c6 T - kappa_phi c6 X^2) u + a
    g.phi_linear = CanonicalExpr::constant(c[2]) - kX.scaled(c[4]) -
                   kT.scaled(2.0 * c[5]) - (kX * kX).scaled(kappa_phi(mode, beta) * c[5]);
    g.phi_source = inf.a_term;
    return g;
}

std::vector<Generator> basis(SymmetryMode mode, FractionalOrder alpha,
                             FractionalOrder beta) {
    std::vector<Generator> vs;
    for (int i = 0; i < 6; ++i) {
        std::array<double, 6> c{};
        c[i] = 1.0;
        vs.push_back(infinitesimals_to_generator(Infinitesimals(c), mode, alpha, beta));
    }
    return vs;
}

Generator source_generator(const CanonicalExpr& a_term) {
    if (!heat_residual(a_term).is_zero())
        throw std::invalid_argument("source term must solve the diffusion equation");
    Generator g;
    g.phi_source = a_term;
    return g;
}

namespace {

// Action of the (X,T) part of a generator on a scalar expression.
CanonicalExpr apply_xt(const Generator& g, const CanonicalExpr& f) {
    return g.xi * formal_dX(f) + g.tau * formal_dT(f);
}

}  // namespace

Generator lie_bracket(const Generator& g, const Generator& h) {
    Generator r;
    r.xi = apply_xt(g, h.xi) - apply_xt(h, g.xi);
    r.tau = apply_xt(g, h.tau) - apply_xt(h, g.tau);
    // phi = phi_linear u + phi_source; the phi_linear * phi_linear cross
    // terms cancel in the u-coefficient.
    r.phi_linear = apply_xt(g, h.phi_linear) - apply_xt(h, g.phi_linear);
    r.phi_source = apply_xt(g, h.phi_source) - apply_xt(h, g.phi_source) +
                   g.phi_source * h.phi_linear - h.phi_source * g.phi_linear;
    return r;
}

namespace {

double coeff_of(const CanonicalExpr& e, int xpow, int tpow) {
    for (const auto& t : e.terms())
        if (t.xpow == xpow && t.tpow == tpow && t.expx == 0.0 && t.expt == 0.0)
            return t.coeff;
    return 0.0;
}

}  // namespace

BracketCoords decompose_in_basis(const Generator& g, SymmetryMode mode,
                                 FractionalOrder alpha, FractionalOrder beta,
                                 double tol) {
    // Coefficient patterns of the basis (see infinitesimals_to_generator):
    //   xi  = g1 + g4 X + 2 g5 T + 4 g6 X T
    //   tau = g2 + 2 g4 T + kt g6 T^2
    //   phi = g3 - g5 X - 2 g6 T - kp g6 X^2
    BracketCoords c{};
    c[5] = coeff_of(g.xi, 1, 1) / 4.0;
    c[3] = coeff_of(g.xi, 1, 0);
    c[4] = coeff_of(g.xi, 0, 1) / 2.0;
    c[0] = coeff_of(g.xi, 0, 0);
    c[1] = coeff_of(g.tau, 0, 0);
    c[2] = coeff_of(g.phi_linear, 0, 0);
    std::array<double, 6> arr{c[0], c[1], c[2], c[3], c[4], c[5]};
    Infinitesimals inf(arr);
    const Generator rec = infinitesimals_to_generator(inf, mode, alpha, beta);
    const double mismatch =
        (g.xi - rec.xi).max_abs_coeff() + (g.tau - rec.tau).max_abs_coeff() +
        (g.phi_linear - rec.phi_linear).max_abs_coeff() + g.phi_source.max_abs_coeff();
    if (mismatch > tol)
        throw std::runtime_error("closure failure: generator leaves the span of v1..v6");
    return c;
}

BracketTable bracket_table(SymmetryMode mode, FractionalOrder alpha,
                           FractionalOrder beta) {
    const std::vector<Generator> vs = basis(mode, alpha, beta);
    BracketTable table;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            Generator br = lie_bracket(vs[i], vs[j]);
            try {
                table[{i + 1, j + 1}] = decompose_in_basis(br, mode, alpha, beta);
            } catch (const std::runtime_error&) {
                throw std::runtime_error("closure failure at bracket pair (" +
                                         std::to_string(i + 1) + "," +
                                         std::to_string(j + 1) + ")");
            }
        }
    return table;
}

ProlongationCoefficients prolongation_coefficients(const Generator& g,
                                                   const CanonicalExpr& u) {
    const CanonicalExpr u_x = formal_dX(u);
    const CanonicalExpr u_t = formal_dT(u);
    const CanonicalExpr u_xx = formal_dX(u_x);
    const CanonicalExpr u_xt = formal_dT(u_x);
    // phi composed with the actual u; total derivatives become formal ones
    const CanonicalExpr phi = g.phi_linear * u + g.phi_source;
    const CanonicalExpr xi_x = formal_dX(g.xi), xi_t = formal_dT(g.xi);
    const CanonicalExpr tau_x = formal_dX(g.tau), tau_t = formal_dT(g.tau);

    ProlongationCoefficients pc;
    pc.phi_t = formal_dT(phi) - xi_t * u_x - tau_t * u_t;
    pc.phi_x = formal_dX(phi) - xi_x * u_x - tau_x * u_t;
    pc.phi_xx = formal_dX(formal_dX(phi)) - xi_x.scaled(2.0) * u_xx -
                formal_dX(xi_x) * u_x - tau_x.scaled(2.0) * u_xt -
                formal_dX(tau_x) * u_t;
    return pc;
}

CanonicalExpr determining_residual(const Generator& g, const CanonicalExpr& u) {
    if (!heat_residual(u).is_zero())
        throw std::invalid_argument("off-shell: u must solve the diffusion equation");
    const ProlongationCoefficients pc = prolongation_coefficients(g, u);
    return pc.phi_t - pc.phi_xx;
}

TransformFamily::TransformFamily(int family_, double epsilon_,
                                 std::optional<CanonicalExpr> a)
    : family(family_), epsilon(epsilon_), a_term(std::move(a)) {
    if (family < 1 || family > 7)
        throw std::invalid_argument("family must be in 1..7");
    if (family == 7) {
        if (!a_term) throw std::invalid_argument("family 7 requires a source term");
        if (!heat_residual(*a_term).is_zero())
            throw std::invalid_argument("family 7 source must solve the diffusion equation");
    } else if (a_term) {
        throw std::invalid_argument("only family 7 takes a source term");
    }
}

CanonicalExpr transform_solution(const TransformFamily& fam, const CanonicalExpr& seed) {
    const double e = fam.epsilon;
    switch (fam.family) {
        case 1:  // shift in X
            return seed.substitute_linear(1, 0, -e, 0, 1, 0);
        case 2:  // shift in T
            return seed.substitute_linear(1, 0, 0, 0, 1, -e);
        case 3:  // scale by e^eps
            return seed.scaled(std::exp(e));
        case 4:  // (X,T) -> (X e^{-eps}, T e^{-2 eps})
            return seed.substitute_linear(std::exp(-e), 0, 0, 0, std::exp(-2.0 * e), 0);
        case 5:  // exp(e^2 T - e X) f(X - 2eT, T)
            return CanonicalExpr::monomial(1.0, 0, 0, -e, e * e) *
                   seed.substitute_linear(1, -2.0 * e, 0, 0, 1, 0);
        case 6:
            throw std::invalid_argument(
                "family 6 leaves the term algebra; use transform_solution_fn");
        case 7:
            return seed + fam.a_term->scaled(e);
        default:
            throw std::invalid_argument("family must be in 1..7");
    }
}

std::function<double(double, double)> transform_solution_fn(
    const TransformFamily& fam, const std::function<double(double, double)>& seed) {
    const double e = fam.epsilon;
    switch (fam.family) {
        case 1:
            return [seed, e](double X, double T) { return seed(X - e, T); };
        case 2:
            return [seed, e](double X, double T) { return seed(X, T - e); };
        case 3:
            return [seed, e](double X, double T) { return std::exp(e) * seed(X, T); };
        case 4:
            return [seed, e](double X, double T) {
                return seed(X * std::exp(-e), T * std::exp(-2.0 * e));
            };
        case 5:
            return [seed, e](double X, double T) {
                return std::exp(e * e * T - e * X) * seed(X - 2.0 * e * T, T);
            };
        case 6:
            return [seed, e](double X, double T) {
                const double d = 1.0 + 4.0 * e * T;
                return std::exp(-e * X * X / d) / std::sqrt(d) * seed(X / d, T / d);
            };
        case 7: {
            CanonicalExpr a = *fam.a_term;
            return [seed, e, a](double X, double T) {
                return seed(X, T) + e * a.evaluate_xt(X, T);
            };
        }
        default:
            throw std::invalid_argument("family must be in 1..7");
    }
}

std::vector<CanonicalExpr> iterate_family5(double c, double epsilon, int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    const TransformFamily fam(5, epsilon);
    std::vector<CanonicalExpr> out;
    CanonicalExpr u = CanonicalExpr::constant(c);
    for (int i = 0; i < n; ++i) {
        u = transform_solution(fam, u);
        if (!heat_residual(u).is_zero())
            throw std::runtime_error("family-5 iterate lost the solution property");
        out.push_back(u);
    }
    return out;
}

}  // namespace fractool
