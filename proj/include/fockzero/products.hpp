#pragma once

// Entire functions in log-space: closed forms, the modified lattice product
// with genus-2 convergence factors, and the shell-grouped product over the
// sqrt(2n) cross. Values are LogComplex so that e^{(pi/2)|z|^2} growth never
// overflows.

#include "fockzero/sequences.hpp"

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace fockzero
{

struct LogComplex
{
    double log_mag = neg_inf; ///< -inf encodes an exact zero
    double arg = 0.0;         ///< in (-pi, pi]

    static LogComplex zero() { return {}; }
    static LogComplex one() { return {0.0, 0.0}; }
    /// From a complex logarithm; a real part of -inf gives the zero sentinel.
    static LogComplex from_log(cplx log_value);
    static LogComplex from_value(cplx value);

    bool is_zero() const { return log_mag == neg_inf; }
    cplx log() const { return {log_mag, arg}; }
    /// exp back to a plain complex number; overflows for large log_mag.
    cplx value() const;

    friend LogComplex operator*(LogComplex a, LogComplex b);
    friend LogComplex operator/(LogComplex a, LogComplex b);
};

enum class ClosedForm
{
    s,       ///< sin(pi z^2 / 2) / z^2
    S,       ///< (z^2 - 1) sin(pi z^2 / 2) / (pi z^2)
    G_Gamma, ///< the canonical product of the sqrt(2n) cross; equals S
    kernel,  ///< e^{pi conj(w) z}
};

std::string to_string(ClosedForm f);
ClosedForm closed_form_from_string(const std::string &s);

LogComplex eval_closed(ClosedForm f, cplx z, cplx w = 0.0);

/// The unperturbed product over Gamma_nu with square-lattice convergence
/// factors, in closed form through sigma and Gamma functions.
LogComplex lattice_closed_form(double nu, cplx z);

/// A function handle with an evaluation disk.
struct EntireFunction
{
    std::string name;
    std::function<LogComplex(cplx)> eval;
    double domain_radius = inf;

    /// Throws std::domain_error outside the evaluation disk.
    LogComplex operator()(cplx z) const;
};

EntireFunction closed_form(ClosedForm f, cplx w = 0.0);
EntireFunction constant_function(cplx c);
EntireFunction monomial(int k);
/// z^k f(z)
EntireFunction times_monomial(EntireFunction f, int k);
/// f(z) / (z - a) for f vanishing at a; the removable singularity is filled
/// by a Cauchy integral on a small circle around a.
EntireFunction divided_by_linear(EntireFunction f, cplx a);

/// log|f(z)| - (pi/2)|z|^2
double weighted_log_mag(const EntireFunction &f, cplx z);
double weighted_log_mag(LogComplex value, cplx z);

class LatticeProductEvaluator
{
public:
    LatticeProductEvaluator(const PerturbedSet &set, double truncation_radius, int tail_order = 8);

    /// Closed form of the unperturbed product times the finite correction
    /// over perturbed points of the window.
    LogComplex operator()(cplx z) const;
    /// Truncated product over |gamma| <= R_t plus the analytic tail.
    LogComplex direct(cplx z) const;

    /// Bound on the log-magnitude error of direct() on |z| <= r.
    double tail_bound(double r) const;
    /// Bound on the effect of perturbations beyond the window on |z| <= r.
    double perturbation_tail_bound(double r) const;

    double nu() const { return nu_; }
    double truncation_radius() const { return radius_; }
    int tail_order() const { return tail_order_; }
    double domain_radius() const { return radius_ / 4.0; }
    /// T_k, k = 1..tail_order + 8 (index k - 1).
    const std::vector<cplx> &tail_sums() const { return tail_; }

private:
    struct Factor
    {
        cplx gamma;
        cplx lambda;
        cplx node;
        bool origin;
    };

    void check_domain(cplx z) const;
    bool listed(cplx z) const;

    double nu_;
    double radius_;
    int tail_order_;
    double perturbation_constant_ = 0.0;
    std::vector<Factor> factors_;   // every window point, modulus order
    std::vector<Factor> perturbed_; // window points with lambda != gamma
    std::set<std::pair<double, double>> zeros_;
    std::set<std::pair<double, double>> moved_bases_;
    std::vector<cplx> tail_;
    std::vector<double> tail_error_;
};

class ALSProductEvaluator
{
public:
    explicit ALSProductEvaluator(const PerturbedSet &set);

    LogComplex operator()(cplx z) const;

    long n_max() const { return n_max_; }
    double domain_radius() const { return std::sqrt(2.0 * static_cast<double>(n_max_)) / 2.0; }

private:
    struct Shell
    {
        long n;
        std::vector<cplx> lambdas;
    };

    long n_max_ = 0;
    std::vector<Shell> perturbed_;     // shells with some lambda != gamma, increasing n
    std::vector<char> is_perturbed_;   // index n = 0..n_max
    std::vector<long> splits_;         // split ladder s_0 < s_1 < ... = n_max
    std::vector<std::vector<double>> partial_zeta_; // [split][j - 1] = sum over unperturbed n > s of n^{-2j}
    std::set<std::pair<double, double>> zeros_;
};

EntireFunction lattice_function(const PerturbedSet &set, double truncation_radius, int tail_order = 8);
EntireFunction als_function(const PerturbedSet &set);

/// Exact nearest-point queries through a uniform bucket grid.
class NearestPointIndex
{
public:
    explicit NearestPointIndex(const std::vector<cplx> &points);
    explicit NearestPointIndex(const PointSet &set) : NearestPointIndex(set.values()) {}

    double distance(cplx z) const;

private:
    std::vector<cplx> points_;
    double lo_x_ = 0.0, lo_y_ = 0.0, cell_ = 1.0;
    long nx_ = 1, ny_ = 1;
    std::vector<std::vector<std::size_t>> buckets_;
};

double dist_to_set(const PointSet &set, cplx z);
double dist_to_set(const PerturbedSet &set, cplx z);

/// log M(r, f) from >= 1024 equally spaced angles refined near the maximum.
double log_max_modulus(const EntireFunction &f, double r, int angles = 1024);

struct OrderType
{
    double rho = 0.0;
    double tau = 0.0;
    int rho_round = 0;
    std::vector<double> log_max; ///< log M(r) per radius
};

/// rho: slope of log log M against log r; tau: mean of log M / r^{round(rho)}
/// over the upper half of the radii.
OrderType order_type_estimate(const EntireFunction &f, std::span<const double> radii);

} // namespace fockzero
