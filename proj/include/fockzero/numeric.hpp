#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace fockzero
{

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double inf = std::numeric_limits<double>::infinity();
inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

/// log(exp(a) + exp(b)) without overflow; either argument may be -inf.
inline double log_add(double a, double b)
{
    if (a == neg_inf) return b;
    if (b == neg_inf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

/// log(sum_i w_i exp(l_i)) for nonnegative weights.
double log_sum_exp(std::span<const double> logs, std::span<const double> weights);

/// Exactly rounded floating-point summation (Shewchuk partials).
///
/// The result does not depend on the order of the addends, which makes
/// symmetric cancellations exact.
class ExactSum
{
public:
    void add(double x);
    ExactSum &operator+=(double x)
    {
        add(x);
        return *this;
    }
    double value() const;

private:
    std::vector<double> partials_;
};

/// Exact summation of complex values, component-wise.
class ExactComplexSum
{
public:
    void add(cplx z)
    {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const { return {re_.value(), im_.value()}; }

private:
    ExactSum re_, im_;
};

/// Ordinary least-squares line y = intercept + slope * x.
struct LineFit
{
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; ///< root-mean-square residual
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Least squares with an arbitrary design matrix (columns are regressors).
Eigen::VectorXd least_squares(const Eigen::MatrixXd &design, const Eigen::VectorXd &rhs);

/// count points r0 * (r1/r0)^(k/(count-1)), k = 0..count-1.
std::vector<double> log_grid(double r0, double r1, std::size_t count);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre
{
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre &gauss_legendre(int order);

/// Number of worker threads: FOCKZERO_THREADS or the hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n) on thread_count() workers. Each index is
/// visited exactly once; callers write results to per-index slots so the
/// outcome is independent of scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

} // namespace fockzero
