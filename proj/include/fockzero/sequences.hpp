#pragma once

// Point sequences (square lattice variants, the sqrt(2n) cross sequence),
// their perturbations, and the radial statistics computed on them.
//
// Summation order everywhere is by increasing modulus, ties broken by
// increasing principal argument. Sums that can cancel are accumulated
// exactly (ExactSum), so symmetric sets give exactly symmetric results.

#include "fockzero/numeric.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fockzero
{

enum class Family
{
    gamma_nu,   ///< Z x (Z \ {0}) plus the real row shifted by nu on the nonnegative side
    als,        ///< {+-sqrt(2n), +-i sqrt(2n) : n >= 1} U {+-1}
    zeros_of_s, ///< zeros of sin(pi z^2 / 2) / z^2
    custom,
};

std::string to_string(Family f);
Family family_from_string(const std::string &s);

struct Point
{
    cplx z;
    int multiplicity = 1;
};

/// Canonical ordering: modulus, then principal argument.
bool modulus_order(cplx a, cplx b);

/// A finite multiset of complex points; entries are kept in modulus order
/// and duplicates are merged into multiplicities.
class PointSet
{
public:
    PointSet() = default;
    explicit PointSet(std::vector<Point> points, Family family = Family::custom, double nu = 0.0, double radius = inf);
    static PointSet from_values(const std::vector<cplx> &values, Family family = Family::custom, double nu = 0.0,
                                double radius = inf);

    const std::vector<Point> &points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    std::size_t total_multiplicity() const;
    bool empty() const { return points_.empty(); }
    bool contains_origin() const { return contains_origin_; }
    Family family() const { return family_; }
    double nu() const { return nu_; }
    double radius() const { return radius_; }
    double max_modulus() const;
    std::vector<cplx> values() const;

private:
    std::vector<Point> points_;
    Family family_ = Family::custom;
    double nu_ = 0.0;
    double radius_ = inf;
    bool contains_origin_ = false;
};

/// Index (m, n) into Gamma_nu.
struct LatticeIndex
{
    long m = 0;
    long n = 0;
    double nu = 0.0;

    /// The point gamma_{m,n}: m + in off the real row, m for m < 0, m + nu for m >= 0.
    cplx point() const;
    /// The square-lattice node m + in that carries the convergence factor.
    cplx node() const { return {static_cast<double>(m), static_cast<double>(n)}; }
};

/// Inverse of LatticeIndex::point for points of Gamma_nu.
LatticeIndex lattice_index(cplx gamma, double nu);

// Generators ---------------------------------------------------------------

PointSet gen_gamma_nu(double nu, double radius);
PointSet gen_als(double radius);
PointSet gen_zeros_of_s(double radius);
/// {1, 2, ..., count}
PointSet gen_integers(long count);
/// {n^exponent : 1 <= n <= count}
PointSet gen_powers(double exponent, long count);

/// Points of `set` whose value satisfies the predicate.
template <class Pred> PointSet filter(const PointSet &set, Pred keep)
{
    std::vector<Point> out;
    for (const auto &p : set.points())
        if (keep(p.z)) out.push_back(p);
    return PointSet(std::move(out), Family::custom, set.nu(), set.radius());
}

/// Multiplies every point by exp(i angle).
PointSet rotate(const PointSet &set, double angle);

// Perturbations ------------------------------------------------------------

struct ZeroPerturbation
{
};
/// value c / |gamma|^2 (0 at the origin)
struct InverseSquarePerturbation
{
    double c = 0.0;
};
/// Per-shell schedule on the sqrt(2n) cross: the point +sqrt(2n) receives
/// d / n (harmonic) or (-1)^n d (alternating); every other point 0.
struct ShellSchedulePerturbation
{
    enum class Pattern
    {
        harmonic,
        alternating
    };
    double d = 0.0;
    Pattern pattern = Pattern::harmonic;
};
/// Explicit values keyed by exact base coordinates.
struct TablePerturbation
{
    std::map<std::pair<double, double>, double> values;
};

using PerturbationSpec =
    std::variant<ZeroPerturbation, InverseSquarePerturbation, ShellSchedulePerturbation, TablePerturbation>;

struct PerturbedEntry
{
    cplx base;
    double delta = 0.0;
    double theta = 0.0;
    cplx lambda;
};

class PerturbedSet
{
public:
    PerturbedSet() = default;
    PerturbedSet(std::vector<PerturbedEntry> entries, Family family, double nu, double radius);

    const std::vector<PerturbedEntry> &entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    Family family() const { return family_; }
    double nu() const { return nu_; }
    double radius() const { return radius_; }

    /// sup |gamma|^2 |delta_gamma| and sup |gamma|^2 |theta_gamma| over the window.
    double sup_gamma2_delta() const { return sup_delta_; }
    double sup_gamma2_theta() const { return sup_theta_; }
    /// Number of perturbed points that coincide with another perturbed point.
    std::size_t collisions() const { return collisions_; }
    bool unperturbed() const;

    PointSet zeros() const;
    PointSet bases() const;

private:
    std::vector<PerturbedEntry> entries_;
    Family family_ = Family::custom;
    double nu_ = 0.0;
    double radius_ = inf;
    double sup_delta_ = 0.0;
    double sup_theta_ = 0.0;
    std::size_t collisions_ = 0;
};

/// lambda_gamma = gamma exp(delta_gamma) exp(i theta_gamma).
PerturbedSet perturb(const PointSet &base, const PerturbationSpec &delta, const PerturbationSpec &theta);
PerturbedSet unperturbed(const PointSet &base);

/// Shell index n of a point with |gamma|^2 = 2n on the sqrt(2n) cross; 0 for +-1.
long als_shell(cplx gamma);

// Statistics -----------------------------------------------------------------

enum class StatKind
{
    delta_sum,
    shell_sum,
    counting,
    power_sum,
    lindelof_real,
    lindelof_imag,
};

std::string to_string(StatKind k);

struct RadialStats
{
    std::vector<double> radii;
    std::vector<double> values;
    StatKind kind = StatKind::counting;
};

double separation(const PointSet &set);
double separation(const PerturbedSet &set);

/// min over distinct pairs of |lambda - lambda'| min(|gamma|, |gamma'|).
double als_separation_constant(const PerturbedSet &set);

RadialStats counting_function(const PointSet &set, std::span<const double> radii);

/// sum_{0 < |z| <= r} |z|^{-s}
double power_sum(const PointSet &set, double s, double r);
RadialStats power_sum_profile(const PointSet &set, double s, std::span<const double> radii);

/// S(r) = sum_{0 < |z| <= r} z^{-rho}
cplx lindelof_sum(const PointSet &set, int rho, double r);
std::vector<cplx> lindelof_profile(const PointSet &set, int rho, std::span<const double> radii);

struct ExponentEstimate
{
    double value = 0.0;
    double residual = 0.0;
};

/// Slope of log n(r) against log r over the top decade of moduli.
ExponentEstimate convergence_exponent(const PointSet &set);

struct DeltaStats
{
    RadialStats normalized; ///< D(R) = (1 / log R) sum_{|gamma| <= R} delta_gamma
    double delta_hat_proxy = 0.0;
    double delta_proxy = 0.0;
    double ratio_min = 0.0; ///< min of D over the top half of the grid
    double ratio_max = 0.0; ///< max of D over the top half of the grid
};

/// Window statistics for the lower/upper logarithmic densities of delta.
///
/// The proxies are Stolz-Cesaro quotients
///   (Sigma(R_j) - Sigma(R_{j-h})) / (log R_j - log R_{j-h}),  h = half the grid,
/// taken over the top half of the grid; their liminf/limsup bracket those of D(R).
DeltaStats delta_stats(const PerturbedSet &set, std::span<const double> radii);

struct ShellDeltaStats
{
    std::vector<double> shell_sums; ///< Delta_k, k = 1..n_max
    double delta_proxy = 0.0;       ///< Stolz-Cesaro proxy for limsup |sum Delta_k| / log n
    double ratio_proxy = 0.0;       ///< max over the top half of |sum_{k<=n} Delta_k| / log n
    double avdonin_sup = 0.0;       ///< max_n ((n+1)/N) |sum_{k=n+1}^{n+N} Delta_k|
    long avdonin_window = 1;
};

ShellDeltaStats shell_delta_stats(const PerturbedSet &set, long avdonin_window = 1);

/// Half-open arg sectors: -pi/8 <= arg z - k pi/4 < pi/8, k = 0..7.
int sector_index(cplx z);
std::array<PointSet, 8> sector_partition(const PointSet &set);
/// Symmetric double cone: |arg z - beta| <= theta or |arg(-z) - beta| <= theta.
bool in_sector(cplx z, double beta, double theta);

} // namespace fockzero
