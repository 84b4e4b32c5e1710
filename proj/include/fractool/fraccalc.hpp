#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fractool {

// Derivative/integral order restricted to (0, 1].
class FractionalOrder {
public:
    explicit FractionalOrder(double value);
    double value() const { return value_; }
    bool is_classical() const { return value_ == 1.0; }

private:
    double value_;
};

// Uniform grid anchored at the origin: node(i) = i * step.
struct UniformGrid {
    double step = 0.0;
    std::size_t count = 0;

    UniformGrid(double step_, std::size_t count_);
    double node(std::size_t i) const { return step * static_cast<double>(i); }
    double length() const { return node(count - 1); }
};

// Function samples on a 1-D uniform grid.
struct SampledField {
    UniformGrid grid;
    std::vector<double> values;

    SampledField(UniformGrid g, std::vector<double> v);
    static SampledField sample(const UniformGrid& g,
                               const std::function<double(double)>& f);
};

// Row-major samples on a 2-D grid; rows index x, columns index t.
struct SampledField2D {
    UniformGrid grid_x;
    UniformGrid grid_t;
    std::vector<double> values;

    SampledField2D(UniformGrid gx, UniformGrid gt, std::vector<double> v);
    static SampledField2D sample(const UniformGrid& gx, const UniformGrid& gt,
                                 const std::function<double(double, double)>& f);
    double& at(std::size_t ix, std::size_t it) { return values[ix * grid_t.count + it]; }
    double at(std::size_t ix, std::size_t it) const { return values[ix * grid_t.count + it]; }
};

// Gamma function, Lanczos approximation with reflection for x < 0.5.
// Relative accuracy better than 1e-12 on (0, 50].
double gamma_fn(double x);

// Riemann-Liouville integral (1/Gamma(a)) int_0^{x_i} (x_i - s)^{a-1} f(s) ds,
// product integration with the kernel handled exactly on each cell
// (piecewise-linear f).
double rl_integral(const SampledField& f, FractionalOrder alpha, std::size_t index);

// Grunwald-Letnikov binomial weights w_0 = 1, w_k = w_{k-1} (k-1-a)/k.
std::vector<double> gl_weights(double alpha, std::size_t count);

// Modified Riemann-Liouville derivative of f on its grid: the RL derivative
// of f - f(0), discretized by the GL convolution. At order 1 falls back to
// second-order difference quotients. The first few output nodes are replaced
// by polynomial extrapolation; the integral definition is singular at the
// origin for power-law inputs and the raw convolution carries no history
// there.
SampledField mrl_derivative(const SampledField& f, FractionalOrder alpha);

// Coefficient of the power rule D^a x^p = Gamma(1+p)/Gamma(1+p-a) x^{p-a}.
double power_rule_coeff(FractionalOrder alpha, double p);

// Mittag-Leffler E_a(z) = sum_k z^k / Gamma(1 + k a), direct series.
double mittag_leffler(FractionalOrder alpha, double z);

// D^b_x applied twice in sequence (never one derivative of order 2b).
SampledField composed_x_derivative(const SampledField& f, FractionalOrder beta);

// Independent oracle for mrl_derivative: singular-kernel product quadrature
// of int_0^x (x-s)^{-a} (f(s)-f(0)) ds on n cells followed by a central
// difference in x. Shares no code with the GL path.
double quadrature_oracle(const std::function<double(double)>& f,
                         FractionalOrder alpha, double x, std::size_t n);

}  // namespace fractool
