#pragma once

// Theorem-level harnesses. Each harness measures the hypotheses of a result
// on a finite window and returns a report of condition records; the overall
// verdict is the conjunction of the required records.

#include "fockzero/measures.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace fockzero
{

/// Slope threshold for boundedness verdicts on log-log fits.
inline constexpr double boundedness_slope = 0.15;

struct Condition
{
    std::string name;
    double value = 0.0;
    nlohmann::json threshold; ///< e.g. {"op": "<", "bound": 0.25} or {"op": "in", "lower": a, "upper": b}
    bool pass = false;
    bool required = true;
    std::string op;           ///< producing operation
    nlohmann::json config;    ///< its configuration
    std::string note;
};

struct TheoremReport
{
    std::string theorem;
    std::vector<Condition> conditions;
    bool verdict = false;
    nlohmann::json configs = nlohmann::json::object();
    std::vector<std::string> notes;

    Condition &add(Condition c);
    /// verdict = all required conditions pass
    void finalize();
    const Condition *find(const std::string &name) const;
};

/// Admissible exponent range of the lattice theorem: 2/(1+nu) < p < 2/nu.
bool lattice_p_admissible(double nu, double p);

struct Theorem1Config
{
    std::vector<double> radii; ///< delta_stats grid; default: 32 log-spaced radii from R/100 to R
};

TheoremReport check_theorem1(const PerturbedSet &set, double nu, double p, const Theorem1Config &config = {});

struct Theorem2Config
{
    long avdonin_window = 1;
};

TheoremReport check_theorem2(const PerturbedSet &set, double p, const Theorem2Config &config = {});

struct Theorem3Config
{
    double eps = 0.1;
    double tau = boundedness_slope;
};

TheoremReport check_theorem3(const PointSet &set, const Theorem3Config &config = {});

struct EnvelopeConfig
{
    double excluded_radius = 0.1;
    double eps = 0.01;
    double delta_hat = 0.0; ///< window estimate of the lower density (before the eps slack)
    double delta = 0.0;     ///< window estimate of the upper density
    double ray_min = 4.0;
    double ray_max = 12.0;
    int ray_samples = 400;
    double expected_slope_tolerance = 0.2;
};

struct EnvelopeFit
{
    double diagonal_slope = 0.0;   ///< slope of the logged ratio against log r on the diagonal ray
    double expected_slope = 0.0;
    double diagonal_residual = 0.0;
    double m = 0.0;                ///< fitted M in [0, 10]
    double lower_constant = 0.0;   ///< log of the implied constant on the lower side
    double upper_constant = 0.0;
    double lower_residual = 0.0;   ///< rms of the lower-side log residuals
    double upper_residual = 0.0;
    double ratio_min = 0.0;        ///< min of measured / least-squares envelope
    double ratio_max = 0.0;
    double measured_min = 0.0;     ///< extremes of the raw measured ratio
    double measured_max = 0.0;
    std::vector<double> ls_coefficients; ///< [1, log(1+|z|), log(1+|Im .|)]
    double excluded_radius = 0.1;
    std::size_t admissible_points = 0;
    bool pass = false;
};

/// Polar grid |z| <= radius, `radii` x `angles` points (origin excluded).
std::vector<cplx> polar_grid(double radius, int radii, int angles);

EnvelopeFit envelope_verify_lattice(const EntireFunction &g, const PointSet &zeros, double nu,
                                    const std::vector<cplx> &grid, const EnvelopeConfig &config = {});

EnvelopeFit envelope_verify_als(const EntireFunction &g, const PointSet &zeros, const std::vector<cplx> &grid,
                                const EnvelopeConfig &config = {});

/// Condition records of an envelope fit; `lattice` adds the diagonal-ray slope.
TheoremReport envelope_report(const EnvelopeFit &fit, bool lattice, const EnvelopeConfig &config);

struct ZeroExcessConfig
{
    LadderSpec ladder{4.0, 16.0, 0.05, false};
    QuadratureSpec quadrature{.radial_tol = 1e-8, .angular_tol = 1e-10};
};

/// Membership of G/(z - lambda) and non-membership of z G in F^p.
/// `family` selects the admissible p range (lattice with nu, or als).
TheoremReport zero_excess_demo(const EntireFunction &g, Family family, double nu, cplx lambda, double p,
                               const ZeroExcessConfig &config = {});

TheoremReport lindelof_check(const PointSet &set, int rho);

TheoremReport sector_lemma_demo(const PointSet &set, double beta, double theta);

} // namespace fockzero
