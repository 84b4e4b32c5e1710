#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "fractool/verify.hpp"

using namespace fractool;

namespace {

const FractionalOrder kOne(1.0);
const FractionalOrder kHalf(0.5);

UniformGrid unit_grid(std::size_t n) { return UniformGrid(1.0 / double(n - 1), n); }

}  // namespace

TEST_CASE("numeric residual of classical solutions") {
    // u = x: residual is d_t x - d_x^2 x = 0
    const ResidualReport linear = pde_residual_numeric(
        [](double x, double) { return x; }, kOne, kOne, unit_grid(64), unit_grid(64));
    CHECK(linear.max_rel < 1e-8);

    // u = x^2 + 2t, the classical heat polynomial
    const ResidualReport poly = pde_residual_numeric(
        [](double x, double t) { return x * x + 2.0 * t; }, kOne, kOne, unit_grid(128),
        unit_grid(128));
    CHECK(poly.max_rel < 1e-6);

    CHECK_THROWS_AS(pde_residual_numeric([](double, double) { return 1.0; }, kOne, kOne,
                                         unit_grid(8), unit_grid(8)),
                    std::invalid_argument);
}

TEST_CASE("formal residual reports") {
    CHECK(pde_residual_formal(parse_expr("exp(X+T)")).residual_expr->is_zero());

    const CanonicalExpr u5 =
        transform_solution(TransformFamily(5, 0.7), parse_expr("X^2+2*T"));
    CHECK(pde_residual_formal(u5).residual_expr->is_zero());

    const ResidualReport bad = pde_residual_formal(parse_expr("X*T"));
    CHECK(!bad.residual_expr->is_zero());
    CHECK((*bad.residual_expr - parse_expr("X")).is_zero());
}

TEST_CASE("formal and numeric modes agree at classical orders") {
    const std::vector<CanonicalExpr> seeds = {parse_expr("X^2+2*T"), parse_expr("exp(X+T)")};
    for (const auto& seed : seeds) {
        REQUIRE(pde_residual_formal(seed).residual_expr->is_zero());
        const ResidualReport num = pde_residual_numeric(
            [&](double x, double t) { return seed.evaluate(x, t, kOne, kOne); }, kOne, kOne,
            unit_grid(512), unit_grid(512));
        // one-sided stencils at the far edge keep the max norm O(h)
        CHECK(num.max_rel < 5e-3);
        CHECK(num.rms_rel < 1e-3);
    }
}

TEST_CASE("classical residual decreases under grid refinement") {
    auto u = [](double x, double t) { return std::exp(x + t); };
    double prev = 1e9;
    for (std::size_t n : {64, 128, 256}) {
        const ResidualReport rep =
            pde_residual_numeric(u, kOne, kOne, unit_grid(n), unit_grid(n));
        CHECK(rep.rms_rel < prev / 1.9);  // at least linear decrease
        prev = rep.rms_rel;
    }
}

TEST_CASE("suite_classical_limit passes and covers all families") {
    const auto reports = suite_classical_limit();
    CHECK(reports.size() == 21);  // 3 seeds x 7 families
    for (const auto& rep : reports) {
        if (rep.mode == "formal") CHECK(rep.residual_expr->is_zero());
        else CHECK(rep.max_rel < 1e-6);
    }
}

TEST_CASE("suite_eigen_solution small-grid run") {
    const auto reports = suite_eigen_solution(kHalf, kHalf, 1.0, {64, 128});
    CHECK(reports.size() == 2);
    CHECK(reports[1].rms_rel < reports[0].rms_rel);
    CHECK(reports[1].rms_rel < 5e-2);
    CHECK_THROWS_AS(suite_eigen_solution(kHalf, kHalf, 5.0, {64, 128}), std::domain_error);
}

TEST_CASE("eigen solution reduces to exp(x+t) at classical orders") {
    const auto reports = suite_eigen_solution(kOne, kOne, 1.0, {256});
    CHECK(reports[0].max_rel < 1e-2);
    CHECK(reports[0].rms_rel < 1e-3);
}

TEST_CASE("gap report: formal zero, numeric gap recorded, never asserted") {
    const auto reports = gap_report_family5(kHalf, kHalf, 0.5, 1.0, 128);
    CHECK(reports.size() == 2);
    CHECK(reports[0].mode == "formal");
    CHECK(reports[0].residual_expr->is_zero());
    CHECK(reports[1].mode == "numeric");
    CHECK(reports[1].rms_rel > 0.0);
    MESSAGE("convention-gap numeric rms: ", reports[1].rms_rel);

    // classical orders: the conventions coincide
    const auto classical = gap_report_family5(kOne, kOne, 0.5, 1.0, 128);
    CHECK(classical[1].max_rel < 5e-3);

    // epsilon = 0: constant solution, both residuals vanish
    const auto flat = gap_report_family5(kHalf, kHalf, 0.0, 1.0, 128);
    CHECK(flat[0].residual_expr->is_zero());
    CHECK(flat[1].max_rel < 1e-12);
}

TEST_CASE("report serialization round-trips norms bit-exactly") {
    const auto reports = gap_report_family5(kHalf, kHalf, 0.37, 2.0, 128);
    for (const auto& rep : reports) {
        const ResidualReport back = ResidualReport::from_json(rep.to_json());
        CHECK(back.max_rel == rep.max_rel);
        CHECK(back.rms_rel == rep.rms_rel);
        CHECK(back.alpha == rep.alpha);
        CHECK(back.beta == rep.beta);
        CHECK(back.mode == rep.mode);
        CHECK(back.family == rep.family);
        CHECK(back.grid == rep.grid);
    }
}
