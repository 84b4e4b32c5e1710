#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fractool/canonical.hpp"
#include "fractool/characteristics.hpp"
#include "fractool/fraccalc.hpp"
#include "fractool/symmetry.hpp"
#include "fractool/verify.hpp"

namespace py = pybind11;
using namespace fractool;

PYBIND11_MODULE(_fractool, m) {
    m.doc() = "fractional-calculus and Lie symmetry toolkit for the space-time "
              "fractional diffusion equation";

    m.def("gamma_fn", &gamma_fn, py::arg("x"));
    m.def("power_rule_coeff",
          [](double alpha, double p) { return power_rule_coeff(FractionalOrder(alpha), p); },
          py::arg("alpha"), py::arg("p"));
    m.def("mittag_leffler",
          [](double alpha, double z) { return mittag_leffler(FractionalOrder(alpha), z); },
          py::arg("alpha"), py::arg("z"));
    m.def("convention_gap",
          [](int mexp, double order) { return convention_gap(mexp, FractionalOrder(order)); },
          py::arg("m"), py::arg("order"));

    m.def("mrl_derivative",
          [](const std::vector<double>& values, double step, double alpha) {
              const UniformGrid g(step, values.size());
              return mrl_derivative(SampledField(g, values), FractionalOrder(alpha)).values;
          },
          py::arg("values"), py::arg("step"), py::arg("alpha"),
          "Modified Riemann-Liouville derivative of uniformly sampled values");
    m.def("composed_x_derivative",
          [](const std::vector<double>& values, double step, double beta) {
              const UniformGrid g(step, values.size());
              return composed_x_derivative(SampledField(g, values), FractionalOrder(beta))
                  .values;
          },
          py::arg("values"), py::arg("step"), py::arg("beta"));
    m.def("rl_integral",
          [](const std::vector<double>& values, double step, double alpha, std::size_t i) {
              const UniformGrid g(step, values.size());
              return rl_integral(SampledField(g, values), FractionalOrder(alpha), i);
          },
          py::arg("values"), py::arg("step"), py::arg("alpha"), py::arg("index"));

    m.def("to_canonical",
          [](double x, double t, double alpha, double beta) {
              return to_canonical(x, t, FractionalOrder(alpha), FractionalOrder(beta));
          },
          py::arg("x"), py::arg("t"), py::arg("alpha"), py::arg("beta"));

    m.def("transform",
          [](int family, double epsilon, const std::string& seed) {
              const TransformFamily fam(family, epsilon,
                                        family == 7
                                            ? std::optional<CanonicalExpr>(parse_expr("exp(X+T)"))
                                            : std::nullopt);
              return transform_solution(fam, parse_expr(seed)).str(9);
          },
          py::arg("family"), py::arg("epsilon"), py::arg("seed"),
          "Apply solution family 1-5 or 7 to a seed expression; returns the "
          "transformed expression in the canonical grammar");
    m.def("heat_residual_max",
          [](const std::string& expr) { return heat_residual(parse_expr(expr)).max_abs_coeff(); },
          py::arg("expr"),
          "Largest coefficient of d_T e - d_X^2 e; zero means e solves the equation");
    m.def("evaluate_expr",
          [](const std::string& expr, double x, double t, double alpha, double beta) {
              return parse_expr(expr).evaluate(x, t, FractionalOrder(alpha),
                                               FractionalOrder(beta));
          },
          py::arg("expr"), py::arg("x"), py::arg("t"), py::arg("alpha"), py::arg("beta"));
    m.def("iterate_family5",
          [](double c, double epsilon, int n) {
              std::vector<std::string> out;
              for (const auto& e : iterate_family5(c, epsilon, n)) out.push_back(e.str(9));
              return out;
          },
          py::arg("c"), py::arg("epsilon"), py::arg("n"));

    m.def("bracket_table",
          []() {
              const FractionalOrder one(1.0);
              std::map<std::pair<int, int>, std::array<double, 6>> out;
              for (const auto& [k, v] : bracket_table(SymmetryMode::Corrected, one, one))
                  out[k] = v;
              return out;
          },
          "Structure constants of the corrected basis at classical orders");

    m.def("eigen_suite",
          [](double alpha, double beta, double mu, std::vector<std::size_t> grids) {
              std::vector<std::string> out;
              for (const auto& r : suite_eigen_solution(FractionalOrder(alpha),
                                                        FractionalOrder(beta), mu, grids))
                  out.push_back(r.to_json());
              return out;
          },
          py::arg("alpha"), py::arg("beta"), py::arg("mu") = 1.0,
          py::arg("grids") = std::vector<std::size_t>{64, 128});
    m.def("gap_report",
          [](double alpha, double beta, double epsilon, double c, std::size_t n) {
              std::vector<std::string> out;
              for (const auto& r : gap_report_family5(FractionalOrder(alpha),
                                                      FractionalOrder(beta), epsilon, c, n))
                  out.push_back(r.to_json());
              return out;
          },
          py::arg("alpha"), py::arg("beta"), py::arg("epsilon"), py::arg("c") = 1.0,
          py::arg("grid_n") = 128);
}
