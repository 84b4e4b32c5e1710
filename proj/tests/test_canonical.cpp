#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "fractool/canonical.hpp"

using namespace fractool;

namespace {

bool expr_equal(const CanonicalExpr& a, const CanonicalExpr& b, double tol = 1e-12) {
    return (a - b).is_zero(tol);
}

// random polynomial-exponential expression with small integer exponents
CanonicalExpr random_expr(std::mt19937& rng) {
    std::uniform_int_distribution<int> pw(0, 3);
    std::uniform_real_distribution<double> co(-2.0, 2.0);
    std::uniform_int_distribution<int> nterms(1, 4);
    std::uniform_int_distribution<int> pick(-1, 1);
    std::vector<CanonicalTerm> ts;
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i)
        ts.push_back(CanonicalTerm{co(rng), pw(rng), pw(rng),
                                   0.5 * pick(rng), 0.5 * pick(rng)});
    return CanonicalExpr(ts);
}

}  // namespace

TEST_CASE("to_canonical") {
    const FractionalOrder one(1.0), half(0.5);
    auto [X, T] = to_canonical(2.0, 3.0, one, one);
    CHECK(X == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(T == doctest::Approx(3.0).epsilon(1e-14));
    auto [Xh, Th] = to_canonical(1.0, 1.0, one, half);
    CHECK(Xh == doctest::Approx(1.1283792).epsilon(1e-7));
    auto [X0, T0] = to_canonical(0.0, 0.0, half, half);
    CHECK(X0 == 0.0);
    CHECK(T0 == 0.0);
    CHECK_THROWS_AS(to_canonical(-1.0, 0.0, one, one), std::domain_error);
}

TEST_CASE("formal derivatives") {
    const CanonicalExpr e = parse_expr("X^2+2*T");
    CHECK(expr_equal(formal_dX(e), parse_expr("2*X")));
    CHECK(expr_equal(formal_dT(e), parse_expr("2")));
    CHECK(expr_equal(formal_dX(parse_expr("exp(0.5*X)")), parse_expr("0.5*exp(0.5*X)")));
    // product rule, exact in the algebra
    CHECK(expr_equal(formal_dX(parse_expr("X*exp(X+T)")),
                     parse_expr("exp(X+T)+X*exp(X+T)")));
}

TEST_CASE("formal_dX and formal_dT commute") {
    std::mt19937 rng(7);
    for (int i = 0; i < 50; ++i) {
        const CanonicalExpr e = random_expr(rng);
        CHECK(expr_equal(formal_dX(formal_dT(e)), formal_dT(formal_dX(e))));
    }
}

TEST_CASE("formal derivative agrees with finite differences of evaluate") {
    std::mt19937 rng(11);
    const FractionalOrder a(0.6), b(0.8);
    const double h = 1e-4;
    for (int i = 0; i < 20; ++i) {
        const CanonicalExpr e = random_expr(rng);
        const CanonicalExpr dx = formal_dX(e);
        const double X = 0.7, T = 0.9;
        const double fd = (e.evaluate_xt(X + h, T) - e.evaluate_xt(X - h, T)) / (2.0 * h);
        const double an = dx.evaluate_xt(X, T);
        if (std::abs(an) > 1e-8) CHECK(std::abs(fd - an) / std::abs(an) < 1e-6);
    }
    (void)a; (void)b;
}

TEST_CASE("power-rule convention") {
    const FractionalOrder half(0.5);
    CHECK(expr_equal(power_rule_dT(parse_expr("T"), FractionalOrder(0.37)),
                     parse_expr("1")));
    // X^2 under the power rule at beta = 1/2: (4/pi) X, unlike the chain rule's 2X
    const CanonicalExpr d = power_rule_dX(parse_expr("X^2"), half);
    CHECK(expr_equal(d, CanonicalExpr::var_x().scaled(4.0 / M_PI), 1e-12));
    CHECK(power_rule_dT(parse_expr("5"), half).is_zero());
    CHECK_THROWS_AS(power_rule_dT(parse_expr("exp(T)"), half), std::invalid_argument);
    CHECK_THROWS_AS(power_rule_dX(parse_expr("exp(X)"), half), std::invalid_argument);
}

TEST_CASE("convention_gap") {
    CHECK(std::abs(convention_gap(2, FractionalOrder(1.0)) - 1.0) < 1e-12);
    CHECK(std::abs(convention_gap(3, FractionalOrder(1.0)) - 1.0) < 1e-12);
    for (int m = 2; m <= 10; ++m)
        CHECK(std::abs(convention_gap(m, FractionalOrder(1.0)) - 1.0) < 1e-12);
    CHECK(std::abs(convention_gap(2, FractionalOrder(0.5)) - 2.0 / M_PI) < 1e-12);
    CHECK_THROWS_AS(convention_gap(1, FractionalOrder(0.5)), std::invalid_argument);
}

TEST_CASE("evaluate") {
    const FractionalOrder one(1.0), half(0.5);
    CHECK(parse_expr("X^2+2*T").evaluate(1.0, 1.0, one, one) ==
          doctest::Approx(3.0).epsilon(1e-14));
    CHECK(parse_expr("exp(X)").evaluate(1.0, 0.3, one, half) ==
          doctest::Approx(std::exp(1.1283792)).epsilon(1e-6));
    CHECK(CanonicalExpr().evaluate(0.2, 0.4, one, one) == 0.0);
}

TEST_CASE("heat_residual") {
    CHECK(heat_residual(parse_expr("X^2+2*T")).is_zero());
    CHECK(heat_residual(parse_expr("exp(X+T)")).is_zero());
    const CanonicalExpr r = heat_residual(parse_expr("X*T"));
    CHECK(!r.is_zero());
    CHECK(expr_equal(r, parse_expr("X")));
}

TEST_CASE("normalization is idempotent and zero terms vanish") {
    std::mt19937 rng(23);
    for (int i = 0; i < 30; ++i) {
        const CanonicalExpr e = random_expr(rng);
        const CanonicalExpr renorm(
            std::vector<CanonicalTerm>(e.terms().begin(), e.terms().end()));
        CHECK(e.terms().size() == renorm.terms().size());
        CHECK(expr_equal(e, renorm, 1e-15));
    }
    const CanonicalExpr z = parse_expr("X") - parse_expr("X");
    CHECK(z.terms().empty());
}

TEST_CASE("algebra is commutative and associative up to normalization") {
    std::mt19937 rng(31);
    for (int i = 0; i < 30; ++i) {
        const CanonicalExpr a = random_expr(rng), b = random_expr(rng),
                            c = random_expr(rng);
        CHECK(expr_equal(a + b, b + a, 1e-15));
        CHECK(expr_equal(a * b, b * a, 1e-13));
        CHECK(expr_equal((a + b) + c, a + (b + c), 1e-13));
        CHECK(expr_equal((a * b) * c, a * (b * c), 1e-12));
    }
}

TEST_CASE("parser round trip") {
    std::mt19937 rng(47);
    for (int i = 0; i < 40; ++i) {
        const CanonicalExpr e = random_expr(rng);
        CHECK(expr_equal(parse_expr(e.str()), e, 1e-12));
    }
    for (const char* s : {"X^2+2*T", "exp(0.09*T-0.3*X)", "-3.5*X*T^2", "0",
                          "2.7182818*exp(X+T)", "(X+T)^2*exp(-X)"}) {
        const CanonicalExpr e = parse_expr(s);
        CHECK(expr_equal(parse_expr(e.str()), e, 1e-12));
    }
    CHECK_THROWS_AS(parse_expr("exp(X^2)"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expr("X +"), std::invalid_argument);
    CHECK_THROWS_AS(parse_expr("Y"), std::invalid_argument);
}
