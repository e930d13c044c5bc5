#include "fockzero/verify.hpp"

#include "fockzero/io.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fockzero
{

namespace
{

using nlohmann::json;

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

json less_than(double bound) { return {{"op", "<"}, {"bound", bound}}; }
json greater_than(double bound) { return {{"op", ">"}, {"bound", bound}}; }
json at_least(double bound) { return {{"op", ">="}, {"bound", bound}}; }
json open_interval(double lower, double upper) { return {{"op", "in"}, {"lower", lower}, {"upper", upper}}; }
json no_threshold() { return {{"op", "report"}}; }

Condition informational(std::string name, double value, std::string op, json config, std::string note = {})
{
    return {std::move(name), value, no_threshold(), true, false, std::move(op), std::move(config), std::move(note)};
}

// Slope of log(values) against log(radii) over the annuli of the window;
// annuli whose sup vanishes are skipped.
double sup_growth_slope(const PerturbedSet &set, bool theta)
{
    const double top = set.radius() < inf ? set.radius() : 0.0;
    double r_max = top;
    for (const auto &e : set.entries()) r_max = std::max(r_max, std::abs(e.base));
    if (!(r_max > 2.0)) return 0.0;
    const auto edges = log_grid(1.0, r_max, 17);
    std::vector<double> sups(edges.size() - 1, 0.0);
    for (const auto &e : set.entries()) {
        const double r = std::abs(e.base);
        if (r == 0.0) continue;
        const auto it = std::lower_bound(edges.begin() + 1, edges.end(), r);
        if (it == edges.end()) continue;
        const auto k = static_cast<std::size_t>(it - edges.begin() - 1);
        sups[k] = std::max(sups[k], r * r * std::abs(theta ? e.theta : e.delta));
    }
    std::vector<double> x, y;
    for (std::size_t k = 0; k < sups.size(); ++k) {
        if (sups[k] <= 0.0) continue;
        x.push_back(std::log(edges[k + 1]));
        y.push_back(std::log(sups[k]));
    }
    if (x.size() < 3) return 0.0;
    return fit_line(x, y).slope;
}

void add_boundedness(TheoremReport &report, const PerturbedSet &set)
{
    const json cfg = {{"annuli", 16}, {"fit", "log sup against log R"}};
    for (bool theta : {false, true}) {
        const std::string what = theta ? "theta" : "delta";
        const double sup = theta ? set.sup_gamma2_theta() : set.sup_gamma2_delta();
        const double slope = sup_growth_slope(set, theta);
        report.add(informational("sup |gamma^2 " + what + "|", sup, "sequences.perturb", {{"window_radius", set.radius()}}));
        report.add({"sup |gamma^2 " + what + "| growth slope", slope, less_than(boundedness_slope),
                    std::isfinite(sup) && slope < boundedness_slope, true, "verify.sup_growth_slope", cfg,
                    "bounded when the annulus sups do not grow with R"});
    }
}

double rms(const std::vector<double> &v)
{
    if (v.empty()) return 0.0;
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double s = 0.0;
    for (double x : v) s += (x - mean) * (x - mean);
    return std::sqrt(s / static_cast<double>(v.size()));
}

struct Sample
{
    double q;      // logged ratio
    double l_abs;  // log(1 + |z|)
    double l_im;   // log(1 + |Im z|) or log(1 + |Im z^2|)
};

// Chooses M on a grid in [0, 10] minimizing the total log-spread of the two
// one-sided residuals, then records the implied constants.
void fit_sandwich(EnvelopeFit &fit, const std::vector<Sample> &samples, double lower_exp, double upper_exp)
{
    double best = inf;
    for (int k = 0; k <= 200; ++k) {
        const double m = 0.05 * k;
        double lo_min = inf, lo_max = -inf, hi_min = inf, hi_max = -inf;
        for (const auto &s : samples) {
            const double lower = s.q - (m * s.l_im - (lower_exp + m) * s.l_abs);
            const double upper = s.q - ((upper_exp + m) * s.l_abs - m * s.l_im);
            lo_min = std::min(lo_min, lower);
            lo_max = std::max(lo_max, lower);
            hi_min = std::min(hi_min, upper);
            hi_max = std::max(hi_max, upper);
        }
        const double spread = (lo_max - lo_min) + (hi_max - hi_min);
        if (spread < best - 1e-12) {
            best = spread;
            fit.m = m;
            fit.lower_constant = lo_min;
            fit.upper_constant = hi_max;
        }
    }
    std::vector<double> lo, hi;
    for (const auto &s : samples) {
        lo.push_back(s.q - (fit.m * s.l_im - (lower_exp + fit.m) * s.l_abs));
        hi.push_back(s.q - ((upper_exp + fit.m) * s.l_abs - fit.m * s.l_im));
    }
    fit.lower_residual = rms(lo);
    fit.upper_residual = rms(hi);
}

void fit_least_squares(EnvelopeFit &fit, const std::vector<Sample> &samples)
{
    Eigen::MatrixXd design(static_cast<Eigen::Index>(samples.size()), 3);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        design(row, 0) = 1.0;
        design(row, 1) = samples[i].l_abs;
        design(row, 2) = samples[i].l_im;
        rhs(row) = samples[i].q;
    }
    const Eigen::VectorXd c = least_squares(design, rhs);
    fit.ls_coefficients = {c(0), c(1), c(2)};
    double lo = inf, hi = -inf, q_lo = inf, q_hi = -inf;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double r = samples[i].q - (c(0) + c(1) * samples[i].l_abs + c(2) * samples[i].l_im);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        q_lo = std::min(q_lo, samples[i].q);
        q_hi = std::max(q_hi, samples[i].q);
    }
    fit.ratio_min = std::exp(lo);
    fit.ratio_max = std::exp(hi);
    fit.measured_min = std::exp(q_lo);
    fit.measured_max = std::exp(q_hi);
}

void require_config(const EnvelopeConfig &config)
{
    if (!(config.excluded_radius > 0.0)) throw std::invalid_argument("envelope: excluded radius must be positive");
    if (!(config.eps >= 0.0)) throw std::invalid_argument("envelope: eps must be nonnegative");
}

std::vector<LogComplex> evaluate_all(const EntireFunction &g, const std::vector<cplx> &points)
{
    for (cplx z : points)
        if (std::abs(z) > g.domain_radius * (1.0 + 1e-12))
            throw std::domain_error("envelope: grid point outside the evaluation disk of " + g.name);
    std::vector<LogComplex> out(points.size());
    parallel_for(points.size(), [&](std::size_t i) { out[i] = g(points[i]); });
    return out;
}

void require_admissible(std::size_t count)
{
    if (count < 500)
        throw std::invalid_argument("envelope: grid too sparse (" + std::to_string(count) +
                                    " admissible points, need >= 500)");
}

bool sandwich_finite(const EnvelopeFit &fit)
{
    return std::isfinite(fit.lower_constant) && std::isfinite(fit.upper_constant) && fit.ratio_min > 0.0 &&
           std::isfinite(fit.ratio_max);
}

} // namespace

Condition &TheoremReport::add(Condition c)
{
    conditions.push_back(std::move(c));
    return conditions.back();
}

void TheoremReport::finalize()
{
    verdict = std::all_of(conditions.begin(), conditions.end(), [](const Condition &c) { return !c.required || c.pass; });
}

const Condition *TheoremReport::find(const std::string &name) const
{
    for (const auto &c : conditions)
        if (c.name == name) return &c;
    return nullptr;
}

bool lattice_p_admissible(double nu, double p)
{
    const double upper = nu == 0.0 ? inf : 2.0 / nu;
    return p > 2.0 / (1.0 + nu) && p < upper;
}

TheoremReport check_theorem1(const PerturbedSet &set, double nu, double p, const Theorem1Config &config)
{
    if (set.family() != Family::gamma_nu) throw std::invalid_argument("check_theorem1: set must be of family gamma-nu");
    if (set.nu() != nu) throw std::invalid_argument("check_theorem1: set was generated with a different nu");

    TheoremReport report;
    report.theorem = "lattice uniqueness with zero excess";
    report.configs = {{"nu", nu}, {"p", p}, {"window_radius", set.radius()}, {"points", set.size()}};

    const double lower = nu - 2.0 / p, upper = nu + 1.0 - 2.0 / p;
    const double p_upper = nu == 0.0 ? inf : 2.0 / nu;
    report.add({"p admissible", p, open_interval(2.0 / (1.0 + nu), p_upper), lattice_p_admissible(nu, p), true,
                "verify.lattice_p_admissible", {{"nu", nu}}, "precondition"});

    const double sep = separation(set);
    report.add({"separation", sep, greater_than(0.0), sep > 0.0, true, "sequences.separation", {{"window_radius", set.radius()}}, {}});
    add_boundedness(report, set);

    std::vector<double> radii = config.radii;
    if (radii.empty()) radii = log_grid(5.0, set.radius(), 32);
    const auto ds = delta_stats(set, radii);
    const json cfg = {{"radii", radii.size()}, {"r_min", radii.front()}, {"r_max", radii.back()}, {"proxy", "stolz"}};
    report.add({"delta_hat proxy", ds.delta_hat_proxy, greater_than(lower), ds.delta_hat_proxy > lower, true,
                "sequences.delta_stats", cfg, "lower logarithmic density of delta"});
    report.add({"delta proxy", ds.delta_proxy, less_than(upper), ds.delta_proxy < upper, true, "sequences.delta_stats", cfg,
                "upper logarithmic density of delta"});
    report.add(informational("D(R) min", ds.ratio_min, "sequences.delta_stats", cfg));
    report.add(informational("D(R) max", ds.ratio_max, "sequences.delta_stats", cfg));
    report.notes.push_back("hypotheses only: uniqueness over all of F^p is outside numeric reach");
    report.finalize();
    return report;
}

TheoremReport check_theorem2(const PerturbedSet &set, double p, const Theorem2Config &config)
{
    if (set.family() != Family::als) throw std::invalid_argument("check_theorem2: set must be of family als");
    if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("check_theorem2: need 1 < p < infinity");

    const double q = p / (p - 1.0);
    const double threshold = 1.0 / (2.0 * std::max(p, q));
    TheoremReport report;
    report.theorem = "cross sequence uniqueness with zero excess";
    report.configs = {{"p", p}, {"q", q}, {"window_radius", set.radius()}, {"points", set.size()}};

    const double sep = als_separation_constant(set);
    report.add({"separation constant", sep, greater_than(0.0), sep > 0.0, true, "sequences.als_separation_constant",
                {{"window_radius", set.radius()}}, {}});
    add_boundedness(report, set);

    const auto st = shell_delta_stats(set, config.avdonin_window);
    const json cfg = {{"shells", st.shell_sums.size()}, {"grid", 64}, {"proxy", "stolz"}};
    report.add({"Delta proxy", st.delta_proxy, less_than(threshold), st.delta_proxy < threshold, true,
                "sequences.shell_delta_stats", cfg, "threshold 1/(2 max(p, q))"});
    report.add(informational("ratio proxy", st.ratio_proxy, "sequences.shell_delta_stats", cfg));
    report.add({"Avdonin sup", st.avdonin_sup, less_than(threshold), st.avdonin_sup < threshold, false,
                "sequences.shell_delta_stats", {{"window", config.avdonin_window}}, "sufficient condition, informational"});
    report.notes.push_back("hypotheses only: uniqueness over all of F^p is outside numeric reach");
    report.finalize();
    return report;
}

TheoremReport check_theorem3(const PointSet &set, const Theorem3Config &config)
{
    if (!(config.eps > 0.0)) throw std::invalid_argument("check_theorem3: eps must be positive");
    double bottom = inf;
    for (const auto &pt : set.points())
        if (pt.z != 0.0) bottom = std::min(bottom, std::abs(pt.z));
    const double top = set.max_modulus();
    if (!(bottom < inf) || top < 100.0 * bottom * (1.0 - 1e-12))
        throw std::invalid_argument("check_theorem3: insufficient span (moduli must cover two decades)");

    TheoremReport report;
    report.theorem = "every subset is a zero set";
    report.configs = {{"eps", config.eps}, {"tau", config.tau}, {"points", set.total_multiplicity()}, {"max_modulus", top}};

    // Power-sum increments on a logarithmic ladder over the top two decades.
    const auto radii = log_grid(top / 100.0, top, 33);
    const auto profile = power_sum_profile(set, 2.0, radii);
    std::vector<double> x, y;
    for (std::size_t i = 1; i < radii.size(); ++i) {
        const double inc = profile.values[i] - profile.values[i - 1];
        if (inc <= 0.0) continue;
        x.push_back(std::log(radii[i]));
        y.push_back(std::log(inc));
    }
    if (x.size() < 3) throw std::invalid_argument("check_theorem3: too few nonempty ladder increments");
    const auto fit = fit_line(x, y);
    const bool convergent = fit.slope < -config.tau;
    const json cfg = {{"ladder", radii.size()}, {"r_min", radii.front()}, {"r_max", radii.back()}};
    report.add({"inverse-square increment exponent", fit.slope, less_than(-config.tau), convergent, true,
                "sequences.power_sum_profile", cfg, convergent ? "convergent" : "divergent"});

    const auto kappa = convergence_exponent(set);
    report.add(informational("convergence exponent", kappa.value, "sequences.convergence_exponent", {{"window", "top decade"}}));

    // Tail continuation for a counting function n(r) ~ n(M) (r / M)^kappa,
    // with the last point counted at half weight.
    auto tail_corrected = [&](double s) {
        const double partial = power_sum(set, s, top);
        const double last = static_cast<double>(set.points().back().multiplicity);
        const double n_top = static_cast<double>(set.total_multiplicity()) - last / 2.0;
        if (!(s > kappa.value)) return inf;
        return partial + kappa.value * n_top * std::pow(top, -s) / (s - kappa.value);
    };
    const double value = convergent ? tail_corrected(2.0) : inf;
    report.add(informational("inverse-square sum", value, "sequences.power_sum", {{"tail", "counting-exponent continuation"}},
                             convergent ? "tail-corrected" : "diverges"));
    report.add(informational("sum |z|^(-2-eps)", tail_corrected(2.0 + config.eps), "sequences.power_sum",
                             {{"eps", config.eps}, {"tail", "counting-exponent continuation"}}));
    report.finalize();
    return report;
}

std::vector<cplx> polar_grid(double radius, int radii, int angles)
{
    if (!(radius > 0.0) || radii < 1 || angles < 1) throw std::invalid_argument("polar_grid: need radius > 0 and positive counts");
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(radii) * static_cast<std::size_t>(angles));
    for (int i = 1; i <= radii; ++i) {
        const double r = radius * i / radii;
        // Offset angles so the grid avoids the axes and diagonals.
        for (int j = 0; j < angles; ++j) out.push_back(std::polar(r, 2.0 * pi * (j + 0.37) / angles));
    }
    return out;
}

EnvelopeFit envelope_verify_lattice(const EntireFunction &g, const PointSet &zeros, double nu,
                                    const std::vector<cplx> &grid, const EnvelopeConfig &config)
{
    require_config(config);
    EnvelopeFit fit;
    fit.excluded_radius = config.excluded_radius;
    const NearestPointIndex index(zeros);

    std::vector<cplx> points;
    std::vector<double> dists;
    for (cplx z : grid) {
        const double d = index.distance(z);
        if (d >= config.excluded_radius) {
            points.push_back(z);
            dists.push_back(d);
        }
    }
    require_admissible(points.size());
    fit.admissible_points = points.size();
    const auto values = evaluate_all(g, points);
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < points.size(); ++i)
        samples.push_back({weighted_log_mag(values[i], points[i]) - std::log(dists[i]), std::log1p(std::abs(points[i])),
                           std::log1p(std::abs(points[i].imag()))});

    const double delta_hat = config.delta_hat - config.eps;
    const double delta = config.delta + config.eps;
    fit_least_squares(fit, samples);
    fit_sandwich(fit, samples, nu - delta_hat, -nu + delta);

    // Diagonal ray.
    std::vector<cplx> ray;
    std::vector<double> ray_dist;
    for (int k = 0; k < config.ray_samples; ++k) {
        const double r = config.ray_min + (config.ray_max - config.ray_min) * k / std::max(1, config.ray_samples - 1);
        const cplx z = std::polar(r, pi / 4.0);
        const double d = index.distance(z);
        if (d >= config.excluded_radius) {
            ray.push_back(z);
            ray_dist.push_back(d);
        }
    }
    if (ray.size() < 16) throw std::invalid_argument("envelope: too few admissible points on the diagonal ray");
    const auto ray_values = evaluate_all(g, ray);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < ray.size(); ++i) {
        x.push_back(std::log(std::abs(ray[i])));
        y.push_back(weighted_log_mag(ray_values[i], ray[i]) - std::log(ray_dist[i]));
    }
    const auto line = fit_line(x, y);
    fit.diagonal_slope = line.slope;
    fit.diagonal_residual = line.residual;
    fit.expected_slope = -nu + (config.delta_hat + config.delta) / 2.0;
    const bool slope_ok = fit.diagonal_slope >= -nu + config.delta_hat - config.expected_slope_tolerance &&
                          fit.diagonal_slope <= -nu + config.delta + config.expected_slope_tolerance;
    fit.pass = sandwich_finite(fit) && slope_ok;
    return fit;
}

EnvelopeFit envelope_verify_als(const EntireFunction &g, const PointSet &zeros, const std::vector<cplx> &grid,
                                const EnvelopeConfig &config)
{
    require_config(config);
    EnvelopeFit fit;
    fit.excluded_radius = config.excluded_radius;
    fit.diagonal_slope = nan;
    fit.expected_slope = nan;
    fit.diagonal_residual = nan;

    double extent = 0.0;
    for (cplx z : grid) extent = std::max(extent, std::abs(z));
    const NearestPointIndex lambda_index(zeros);
    const NearestPointIndex gamma_index(gen_als(std::max(1.0, extent + 4.0)));
    const EntireFunction g_gamma = closed_form(ClosedForm::G_Gamma);

    std::vector<cplx> points;
    std::vector<double> log_dist_ratio;
    for (cplx z : grid) {
        const double dl = lambda_index.distance(z), dg = gamma_index.distance(z);
        if (dl >= config.excluded_radius && dg >= config.excluded_radius) {
            points.push_back(z);
            log_dist_ratio.push_back(std::log(dl) - std::log(dg));
        }
    }
    require_admissible(points.size());
    fit.admissible_points = points.size();
    const auto values = evaluate_all(g, points);
    std::vector<Sample> samples;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const cplx z = points[i];
        const double q = values[i].log_mag - g_gamma(z).log_mag - log_dist_ratio[i];
        samples.push_back({q, std::log1p(std::abs(z)), std::log1p(std::abs(2.0 * z.real() * z.imag()))});
    }
    const double delta = config.delta + config.eps;
    fit_least_squares(fit, samples);
    fit_sandwich(fit, samples, 2.0 * delta, 2.0 * delta);
    fit.pass = sandwich_finite(fit);
    return fit;
}

TheoremReport envelope_report(const EnvelopeFit &fit, bool lattice, const EnvelopeConfig &config)
{
    TheoremReport report;
    report.theorem = lattice ? "lattice product envelope" : "cross product envelope";
    report.configs = {{"excluded_radius", config.excluded_radius}, {"eps", config.eps}, {"delta", config.delta},
                      {"delta_hat", config.delta_hat}, {"admissible_points", fit.admissible_points}};
    const std::string op = lattice ? "verify.envelope_verify_lattice" : "verify.envelope_verify_als";
    const json cfg = report.configs;
    report.add({"admissible points", static_cast<double>(fit.admissible_points), at_least(500.0), fit.admissible_points >= 500,
                true, op, cfg, {}});
    report.add({"ratio min", fit.ratio_min, greater_than(0.0), fit.ratio_min > 0.0, true, op, cfg,
                "measured over least-squares envelope"});
    report.add({"ratio max", fit.ratio_max, less_than(inf), std::isfinite(fit.ratio_max), true, op, cfg,
                "measured over least-squares envelope"});
    report.add(informational("M", fit.m, op, cfg, "grid search on [0, 10]"));
    report.add(informational("lower constant (log)", fit.lower_constant, op, cfg));
    report.add(informational("upper constant (log)", fit.upper_constant, op, cfg));
    report.add(informational("lower residual", fit.lower_residual, op, cfg));
    report.add(informational("upper residual", fit.upper_residual, op, cfg));
    report.add(informational("measured ratio spread", fit.measured_max / fit.measured_min, op, cfg));
    if (lattice) {
        const json ray = {{"r_min", config.ray_min}, {"r_max", config.ray_max}, {"samples", config.ray_samples}};
        const double half = (config.delta - config.delta_hat) / 2.0 + config.expected_slope_tolerance;
        const double lo = fit.expected_slope - half, hi = fit.expected_slope + half;
        report.add({"diagonal-ray slope", fit.diagonal_slope, open_interval(lo, hi),
                    fit.diagonal_slope >= lo && fit.diagonal_slope <= hi, true, op, ray, {}});
    }
    report.finalize();
    return report;
}

TheoremReport zero_excess_demo(const EntireFunction &g, Family family, double nu, cplx lambda, double p,
                               const ZeroExcessConfig &config)
{
    TheoremReport report;
    report.theorem = "zero excess";
    report.configs = {{"function", g.name},
                      {"family", to_string(family)},
                      {"lambda", {lambda.real(), lambda.imag()}},
                      {"p", p},
                      {"ladder", to_json(config.ladder)},
                      {"quadrature", to_json(config.quadrature)}};
    bool admissible = false;
    json range;
    if (family == Family::gamma_nu) {
        report.configs["nu"] = nu;
        admissible = lattice_p_admissible(nu, p);
        range = open_interval(2.0 / (1.0 + nu), nu == 0.0 ? inf : 2.0 / nu);
    } else if (family == Family::als) {
        admissible = p > 1.0 && std::isfinite(p);
        range = open_interval(1.0, inf);
    } else {
        throw std::invalid_argument("zero_excess_demo: family must be gamma-nu or als");
    }
    report.add({"p admissible", p, range, admissible, true, "verify.zero_excess_demo", {{"nu", nu}}, "precondition"});
    if (!admissible) {
        report.finalize();
        return report;
    }
    if (!g(lambda).is_zero()) throw std::invalid_argument("zero_excess_demo: lambda is not a zero of the function");

    const json cfg = {{"ladder", to_json(config.ladder)}, {"quadrature", to_json(config.quadrature)}};
    const auto reduced = membership_trend(divided_by_linear(g, lambda), p, config.ladder, config.quadrature);
    report.add({"G/(z-lambda) in F^p", reduced.exponent, less_than(-config.ladder.tau), reduced.verdict == Verdict::converged,
                true, "measures.membership_trend", cfg, to_string(reduced.verdict)});
    const auto raised = membership_trend(times_monomial(g, 1), p, config.ladder, config.quadrature);
    report.add({"z G not in F^p", raised.exponent, greater_than(config.ladder.tau), raised.verdict == Verdict::diverging, true,
                "measures.membership_trend", cfg, to_string(raised.verdict)});
    report.finalize();
    return report;
}

namespace
{

double span_bottom(const PointSet &set, const char *what)
{
    double bottom = inf;
    for (const auto &pt : set.points())
        if (pt.z != 0.0) bottom = std::min(bottom, std::abs(pt.z));
    if (!(bottom < inf) || set.max_modulus() < 100.0 * bottom * (1.0 - 1e-12))
        throw std::invalid_argument(std::string(what) + ": span too small (moduli must cover two decades)");
    return bottom;
}

double slope_against_log(std::span<const double> radii, std::span<const double> values)
{
    std::vector<double> x;
    for (double r : radii) x.push_back(std::log(r));
    return fit_line(x, values).slope;
}

} // namespace

TheoremReport lindelof_check(const PointSet &set, int rho)
{
    if (rho < 1) throw std::invalid_argument("lindelof_check: rho must be an integer >= 1");
    span_bottom(set, "lindelof_check");
    const double top = set.max_modulus();
    const auto radii = log_grid(top / 100.0, top, 64);

    TheoremReport report;
    report.theorem = "finite type at integer order";
    report.configs = {{"rho", rho}, {"radii", radii.size()}, {"r_min", radii.front()}, {"r_max", radii.back()}};
    const json cfg = report.configs;

    const auto counts = counting_function(set, radii);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (counts.values[i] <= 0.0) continue;
        x.push_back(std::log(radii[i]));
        y.push_back(std::log(counts.values[i]) - rho * std::log(radii[i]));
    }
    const double count_slope = x.size() >= 2 ? fit_line(x, y).slope : 0.0;
    report.add({"n(r)/r^rho growth slope", count_slope, less_than(boundedness_slope), count_slope < boundedness_slope, true,
                "sequences.counting_function", cfg, {}});
    report.add(informational("n(R)/R^rho", counts.values.back() / std::pow(top, rho), "sequences.counting_function", cfg));

    const auto sums = lindelof_profile(set, rho, radii);
    std::vector<double> mags;
    double max_mag = 0.0;
    for (cplx s : sums) {
        mags.push_back(std::abs(s));
        max_mag = std::max(max_mag, mags.back());
    }
    const double s_slope = slope_against_log(radii, mags);
    report.add({"|S(r)| slope against log r", s_slope, less_than(boundedness_slope), s_slope < boundedness_slope, true,
                "sequences.lindelof_profile", cfg, {}});
    report.add(informational("max |S(r)|", max_mag, "sequences.lindelof_profile", cfg));
    report.finalize();
    return report;
}

TheoremReport sector_lemma_demo(const PointSet &set, double beta, double theta)
{
    if (!(theta >= 0.0 && theta < pi / 4.0)) throw std::invalid_argument("sector_lemma_demo: theta must lie in [0, pi/4)");
    for (const auto &pt : set.points())
        if (!in_sector(pt.z, beta, theta)) throw std::invalid_argument("sector_lemma_demo: set not inside the sector");
    span_bottom(set, "sector_lemma_demo");
    const double top = set.max_modulus();
    const auto radii = log_grid(top / 100.0, top, 64);

    TheoremReport report;
    report.theorem = "sector criterion";
    report.configs = {{"beta", beta}, {"theta", theta}, {"radii", radii.size()}, {"r_min", radii.front()}, {"r_max", radii.back()}};
    const json cfg = report.configs;

    const double c = std::cos(2.0 * theta);
    const auto sums = lindelof_profile(set, 2, radii);
    const auto powers = power_sum_profile(set, 2.0, radii);
    double worst = inf;
    std::vector<double> mags;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        mags.push_back(std::abs(sums[i]));
        if (powers.values[i] > 0.0) worst = std::min(worst, mags.back() / (c * powers.values[i]));
    }
    report.add({"|S(r)| / (cos(2 theta) power sum)", worst, at_least(1.0 - 1e-12), worst >= 1.0 - 1e-12, true,
                "sequences.lindelof_profile", cfg, "minimum over the sampled radii"});
    report.add(informational("power sum slope against log r", slope_against_log(radii, powers.values),
                             "sequences.power_sum_profile", cfg, "divergence rate"));
    report.add(informational("|S(r)| slope against log r", slope_against_log(radii, mags), "sequences.lindelof_profile", cfg));
    report.finalize();
    return report;
}

} // namespace fockzero
