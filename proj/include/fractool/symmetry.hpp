#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fractool/canonical.hpp"

namespace fractool {

// Two variants of the sixth basis element. Paper keeps Gamma-ratio factors
// on the T^2 and X^2 coefficients as originally published, which break the
// classical limit; Corrected replaces them with the classical heat-equation
// values. Both are exposed, only Corrected is asserted correct.
enum class SymmetryMode { Paper, Corrected };

// The constants c1..c6 plus a source term a(X,T) with zero heat residual.
struct Infinitesimals {
    std::array<double, 6> c{};
    CanonicalExpr a_term;

    Infinitesimals(std::array<double, 6> constants, CanonicalExpr source = {});
};

// Vector field xi d_X + tau d_T + (phi_linear u + phi_source) d_u.
struct Generator {
    CanonicalExpr xi;
    CanonicalExpr tau;
    CanonicalExpr phi_linear;
    CanonicalExpr phi_source;

    bool is_zero(double tol = 1e-12) const;
};

Generator infinitesimals_to_generator(const Infinitesimals& inf, SymmetryMode mode,
                                      FractionalOrder alpha, FractionalOrder beta);

// v1..v6 in canonical variables; v6 depends on the mode (and, in Paper mode,
// on the orders through the Gamma ratios).
std::vector<Generator> basis(SymmetryMode mode, FractionalOrder alpha,
                             FractionalOrder beta);

// The infinite-dimensional part: pure source injection a(X,T) d_u.
Generator source_generator(const CanonicalExpr& a_term);

Generator lie_bracket(const Generator& g, const Generator& h);

// Structure constants: entry (i,j), 1-based, holds the coordinates of
// [v_i, v_j] in the basis v1..v6.
using BracketCoords = std::array<double, 6>;
using BracketTable = std::map<std::pair<int, int>, BracketCoords>;

BracketTable bracket_table(
    SymmetryMode mode, FractionalOrder alpha, FractionalOrder beta);

// Decompose a generator in the v1..v6 basis; throws on closure failure.
BracketCoords decompose_in_basis(const Generator& g, SymmetryMode mode,
                                 FractionalOrder alpha, FractionalOrder beta,
                                 double tol = 1e-12);

struct ProlongationCoefficients {
    CanonicalExpr phi_t;
    CanonicalExpr phi_x;
    CanonicalExpr phi_xx;
};

// Prolongation coefficients evaluated on the jet of a concrete u, all
// derivatives in the chain-rule (canonical) convention.
ProlongationCoefficients prolongation_coefficients(const Generator& g,
                                                   const CanonicalExpr& u);

// phi^[t] - phi^[xx] on an on-shell u (heat_residual(u) must vanish).
CanonicalExpr determining_residual(const Generator& g, const CanonicalExpr& u);

// One of the seven one-parameter solution maps.
struct TransformFamily {
    int family;
    double epsilon;
    std::optional<CanonicalExpr> a_term;  // family 7 only

    TransformFamily(int family_, double epsilon_,
                    std::optional<CanonicalExpr> a = std::nullopt);
};

// Families 1-5 and 7 act inside the algebra; family 6 leaves it.
CanonicalExpr transform_solution(const TransformFamily& fam, const CanonicalExpr& seed);

// Pointwise form for every family, including the projective family 6:
// u = (1+4eT)^{-1/2} exp(-eX^2/(1+4eT)) f(X/(1+4eT), T/(1+4eT)).
std::function<double(double, double)> transform_solution_fn(
    const TransformFamily& fam, const std::function<double(double, double)>& seed);

// u1 = c exp(e^2 T - e X); each iterate feeds back as the family-5 seed.
std::vector<CanonicalExpr> iterate_family5(double c, double epsilon, int n);

}  // namespace fractool
