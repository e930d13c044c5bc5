#pragma once

// Plane integrals against Gaussian-type weights in polar coordinates.
// Integrands are supplied as logarithms; every panel is summed with
// log-sum-exp, so e^{p (pi/2) |z|^2} factors never appear in floating point.

#include "fockzero/products.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fockzero
{

/// d mu_beta = (beta / 2 pi) e^{-beta |z|^2 / 2} dA
struct GaussianMeasure
{
    double beta = pi;

    double log_density(cplx z) const;
};

/// ((1 + |z|^2) / (1 + |Im z^2|))^{alpha p} (1 + |z|)^{-p beta} e^{-p pi |z|^2 / 2} dA
struct NuMeasure
{
    double p = 2.0;
    double alpha = 0.0;
    double beta = 0.0;

    double q() const { return p == 1.0 ? inf : p / (p - 1.0); }
    double log_density(cplx z) const;
};

enum class AngularRule
{
    trapezoid,     ///< uniform nodes, doubled until converged
    diagonal_arcs, ///< adaptive Gauss-Legendre on the eight arcs between axes and diagonals
};

struct QuadratureSpec
{
    int order = 16;             ///< Gauss-Legendre nodes per panel
    double radial_tol = 1e-11;  ///< relative, against the running integral
    double angular_tol = 1e-13; ///< relative, against the circle integral
    double panel_width = 0.5;   ///< initial radial panel width
    int min_angles = 64;
    int max_angles = 1 << 16;
    int max_depth = 24;
    AngularRule angular = AngularRule::trapezoid;
};

using LogIntegrand = std::function<double(cplx)>;

/// log of the circle integral of e^{L(r e^{i t})} dt over [0, 2 pi).
double log_circle_integral(const LogIntegrand &log_f, double r, const QuadratureSpec &spec);

/// log of the integral of e^{L} dA over r0 <= |z| <= r1.
double log_annulus_integral(const LogIntegrand &log_f, double r0, double r1, const QuadratureSpec &spec);

struct LadderSpec
{
    double r0 = 4.0;    ///< R_k = r0 2^{k/2}
    double r_max = 32.0;
    double tau = 0.05;  ///< verdict band on the increment exponent
    bool stop_when_negligible = true;
};

std::vector<double> ladder_radii(const LadderSpec &ladder);

enum class Verdict
{
    converged,
    diverging,
    inconclusive,
};

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string &s);

struct LadderPoint
{
    double radius = 0.0;
    double log_partial = neg_inf;   ///< log I(R_k)
    double log_increment = neg_inf; ///< log (I(R_k) - I(R_{k-1}))
};

struct NormEstimate
{
    std::vector<LadderPoint> ladder;
    Verdict verdict = Verdict::inconclusive;
    double exponent = 0.0; ///< fitted increment exponent: I(R_k) - I(R_{k-1}) ~ R_k^exponent
    double exponent_residual = 0.0;
    double power = 1.0;    ///< value is the integral raised to 1/power
    std::optional<double> value;
    std::optional<double> tail_bound; ///< bound on the integral beyond the last rung
    bool stopped_early = false;
};

/// Integrates e^{L} over the disks of the ladder and classifies the increments.
NormEstimate integrate_ladder(const LogIntegrand &log_f, const LadderSpec &ladder, const QuadratureSpec &spec);

/// (integral of |f|^p d mu_{p pi})^{1/p}
NormEstimate fock_p_norm(const EntireFunction &f, double p, const LadderSpec &ladder = {},
                         const QuadratureSpec &spec = {});

/// integral of |G|^p d nu_{p, alpha, beta}
NormEstimate nu_integral(const EntireFunction &g, const NuMeasure &m, const LadderSpec &ladder,
                         QuadratureSpec spec = {.angular = AngularRule::diagonal_arcs});

/// fock_p_norm with the emphasis on the ladder verdict (membership of f in F^p).
NormEstimate membership_trend(const EntireFunction &f, double p, const LadderSpec &ladder = {},
                              const QuadratureSpec &spec = {});

/// Total mass of mu_beta over |z| <= r_max.
double gaussian_mass(const GaussianMeasure &m, double r_max, const QuadratureSpec &spec = {});

} // namespace fockzero
