#include "fockzero/numeric.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

namespace fockzero
{

double wrap_angle(double a)
{
    if (!std::isfinite(a)) return a;
    if (a > -pi && a <= pi) return a;
    double r = std::remainder(a, 2.0 * pi);
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

double log_sum_exp(std::span<const double> logs, std::span<const double> weights)
{
    double top = neg_inf;
    for (double l : logs) top = std::max(top, l);
    if (top == neg_inf) return neg_inf;
    double acc = 0.0;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        if (logs[i] == neg_inf) continue;
        acc += weights[i] * std::exp(logs[i] - top);
    }
    if (acc <= 0.0) return neg_inf;
    return top + std::log(acc);
}

void ExactSum::add(double x)
{
    std::size_t i = 0;
    for (double y : partials_) {
        if (std::abs(x) < std::abs(y)) std::swap(x, y);
        const double hi = x + y;
        const double lo = y - (hi - x);
        if (lo != 0.0) partials_[i++] = lo;
        x = hi;
    }
    partials_.resize(i);
    partials_.push_back(x);
}

double ExactSum::value() const
{
    std::size_t n = partials_.size();
    if (n == 0) return 0.0;
    double hi = partials_[--n];
    double lo = 0.0;
    while (n > 0) {
        const double x = hi;
        const double y = partials_[--n];
        hi = x + y;
        const double yr = hi - x;
        lo = y - yr;
        if (lo != 0.0) break;
    }
    // Round-half-even correction when the remaining partials push past the tie.
    if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
        const double y = lo * 2.0;
        const double x = hi + y;
        if (y == x - hi) hi = x;
    }
    return hi;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need at least two samples");
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd a(n, 2);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = x[static_cast<std::size_t>(i)];
        b(i) = y[static_cast<std::size_t>(i)];
    }
    const Eigen::VectorXd c = least_squares(a, b);
    LineFit fit;
    fit.intercept = c(0);
    fit.slope = c(1);
    fit.residual = std::sqrt((a * c - b).squaredNorm() / static_cast<double>(n));
    return fit;
}

Eigen::VectorXd least_squares(const Eigen::MatrixXd &design, const Eigen::VectorXd &rhs)
{
    return design.colPivHouseholderQr().solve(rhs);
}

std::vector<double> log_grid(double r0, double r1, std::size_t count)
{
    if (!(r0 > 0.0) || !(r1 > r0) || count < 2) throw std::invalid_argument("log_grid: need 0 < r0 < r1 and count >= 2");
    std::vector<double> out(count);
    const double step = std::log(r1 / r0) / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) out[k] = r0 * std::exp(step * static_cast<double>(k));
    out.back() = r1;
    return out;
}

namespace
{

GaussLegendre compute_gauss_legendre(int order)
{
    GaussLegendre gl;
    gl.nodes.resize(static_cast<std::size_t>(order));
    gl.weights.resize(static_cast<std::size_t>(order));
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= order; ++k) {
            const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = order * (x * p1 - p0) / (x * x - 1.0);
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        gl.nodes[static_cast<std::size_t>(i)] = -x;
        gl.nodes[static_cast<std::size_t>(order - 1 - i)] = x;
        gl.weights[static_cast<std::size_t>(i)] = w;
        gl.weights[static_cast<std::size_t>(order - 1 - i)] = w;
    }
    return gl;
}

} // namespace

const GaussLegendre &gauss_legendre(int order)
{
    static std::mutex mutex;
    static std::map<int, GaussLegendre> cache;
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
    std::lock_guard lock(mutex);
    auto it = cache.find(order);
    if (it == cache.end()) it = cache.emplace(order, compute_gauss_legendre(order)).first;
    return it->second;
}

unsigned thread_count()
{
    if (const char *env = std::getenv("FOCKZERO_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body)
{
    const std::size_t workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers) body(i);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace fockzero
