#include "fockzero/measures.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace fockzero
{

namespace
{

// |e^a - e^b| <= tol e^{ref}
bool close_in_log(double a, double b, double log_ref, double tol)
{
    const double hi = std::max(a, b), lo = std::min(a, b);
    if (hi == neg_inf) return true;
    if (lo == hi) return true;
    const double log_diff = hi + std::log(-std::expm1(lo - hi));
    return log_diff <= std::log(tol) + log_ref;
}

// log of the Gauss-Legendre rule for e^{g} on [a, b]
double log_panel(const std::function<double(double)> &g, double a, double b, int order)
{
    const auto &gl = gauss_legendre(order);
    const double half = (b - a) / 2.0, mid = (a + b) / 2.0;
    std::vector<double> logs(gl.nodes.size());
    for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = g(mid + half * gl.nodes[i]);
    const double s = log_sum_exp(logs, gl.weights);
    return s == neg_inf ? neg_inf : s + std::log(half);
}

double refine(const std::function<double(double)> &g, double a, double b, double whole, double log_ref, double tol,
              int depth, int max_depth, int order)
{
    const double mid = (a + b) / 2.0;
    const double left = log_panel(g, a, mid, order);
    const double right = log_panel(g, mid, b, order);
    const double halves = log_add(left, right);
    if (depth >= max_depth || close_in_log(whole, halves, log_ref, tol)) return halves;
    return log_add(refine(g, a, mid, left, log_ref, tol, depth + 1, max_depth, order),
                   refine(g, mid, b, right, log_ref, tol, depth + 1, max_depth, order));
}

// Adaptive integration of e^{g} over consecutive panels with breakpoints
// `edges`; the tolerance is relative to the larger of the coarse total and
// `external_ref`.
double adaptive(const std::function<double(double)> &g, const std::vector<double> &edges, double tol, int max_depth,
                int order, double external_ref, bool parallel)
{
    const std::size_t panels = edges.size() - 1;
    std::vector<double> coarse(panels);
    auto coarse_one = [&](std::size_t i) { coarse[i] = log_panel(g, edges[i], edges[i + 1], order); };
    if (parallel)
        parallel_for(panels, coarse_one);
    else
        for (std::size_t i = 0; i < panels; ++i) coarse_one(i);
    double log_ref = external_ref;
    for (double c : coarse) log_ref = log_add(log_ref, c);
    if (log_ref == neg_inf) return neg_inf;
    std::vector<double> fine(panels);
    auto fine_one = [&](std::size_t i) { fine[i] = refine(g, edges[i], edges[i + 1], coarse[i], log_ref, tol, 0, max_depth, order); };
    if (parallel)
        parallel_for(panels, fine_one);
    else
        for (std::size_t i = 0; i < panels; ++i) fine_one(i);
    double total = neg_inf;
    for (double f : fine) total = log_add(total, f);
    return total;
}

double log_trapezoid_circle(const LogIntegrand &log_f, double r, const QuadratureSpec &spec)
{
    int n = std::max(8, spec.min_angles);
    while (n < 8.0 * r && n < spec.max_angles) n *= 2;
    std::vector<double> logs(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) logs[static_cast<std::size_t>(j)] = log_f(std::polar(r, 2.0 * pi * j / n));
    double lse = neg_inf;
    for (double l : logs) lse = log_add(lse, l);
    double current = lse == neg_inf ? neg_inf : lse + std::log(2.0 * pi / n);
    while (2 * n <= spec.max_angles) {
        double added = neg_inf;
        for (int j = 0; j < n; ++j) added = log_add(added, log_f(std::polar(r, 2.0 * pi * (j + 0.5) / n)));
        lse = log_add(lse, added);
        n *= 2;
        const double next = lse == neg_inf ? neg_inf : lse + std::log(2.0 * pi / n);
        const bool done = close_in_log(current, next, next, spec.angular_tol);
        current = next;
        if (done) break;
    }
    return current;
}

double log_arcs_circle(const LogIntegrand &log_f, double r, const QuadratureSpec &spec)
{
    // Breakpoints on the axes and the diagonals, four panels per arc.
    std::vector<double> edges;
    for (int k = 0; k <= 32; ++k) edges.push_back(pi / 16.0 * k);
    auto g = [&](double t) { return log_f(std::polar(r, t)); };
    return adaptive(g, edges, spec.angular_tol, spec.max_depth, spec.order, neg_inf, false);
}

} // namespace

double GaussianMeasure::log_density(cplx z) const { return std::log(beta / (2.0 * pi)) - beta / 2.0 * std::norm(z); }

double NuMeasure::log_density(cplx z) const
{
    const double r2 = std::norm(z);
    const double im_z2 = std::abs(2.0 * z.real() * z.imag());
    return alpha * p * (std::log1p(r2) - std::log1p(im_z2)) - p * beta * std::log1p(std::sqrt(r2)) - p * pi / 2.0 * r2;
}

double log_circle_integral(const LogIntegrand &log_f, double r, const QuadratureSpec &spec)
{
    if (spec.angular == AngularRule::trapezoid) return log_trapezoid_circle(log_f, r, spec);
    return log_arcs_circle(log_f, r, spec);
}

double log_annulus_integral(const LogIntegrand &log_f, double r0, double r1, const QuadratureSpec &spec)
{
    if (!(r0 >= 0.0) || !(r1 > r0)) throw std::invalid_argument("annulus integral: need 0 <= r0 < r1");
    std::vector<double> edges{r0};
    while (edges.back() < r1) {
        const double r = edges.back();
        const double width = std::max(spec.panel_width, 0.05 * r);
        edges.push_back(r + width >= r1 - 1e-9 * r1 ? r1 : r + width);
    }
    auto radial = [&](double r) {
        const double a = log_circle_integral(log_f, r, spec);
        return a == neg_inf ? neg_inf : a + std::log(r);
    };
    return adaptive(radial, edges, spec.radial_tol, spec.max_depth, spec.order, neg_inf, true);
}

std::vector<double> ladder_radii(const LadderSpec &ladder)
{
    if (!(ladder.r0 > 0.0) || !(ladder.r_max >= ladder.r0)) throw std::invalid_argument("ladder: need 0 < r0 <= r_max");
    std::vector<double> radii;
    for (int k = 0;; ++k) {
        const double r = ladder.r0 * std::pow(2.0, k / 2.0);
        if (r > ladder.r_max * (1.0 + 1e-12)) break;
        radii.push_back(r);
    }
    return radii;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::converged: return "converged";
    case Verdict::diverging: return "diverging";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Verdict verdict_from_string(const std::string &s)
{
    if (s == "converged") return Verdict::converged;
    if (s == "diverging") return Verdict::diverging;
    if (s == "inconclusive") return Verdict::inconclusive;
    throw std::invalid_argument("unknown verdict: " + s);
}

NormEstimate integrate_ladder(const LogIntegrand &log_f, const LadderSpec &ladder, const QuadratureSpec &spec)
{
    const auto radii = ladder_radii(ladder);
    NormEstimate out;
    double total = neg_inf;
    double previous = 0.0;
    for (std::size_t k = 0; k < radii.size(); ++k) {
        const double inc = log_annulus_integral(log_f, previous, radii[k], spec);
        total = log_add(total, inc);
        out.ladder.push_back({radii[k], total, inc});
        previous = radii[k];
        if (ladder.stop_when_negligible && k >= 1 && total != neg_inf && inc < total + std::log(1e-17)) {
            out.stopped_early = true;
            break;
        }
    }

    if (total == neg_inf) {
        out.verdict = Verdict::converged;
        out.exponent = std::numeric_limits<double>::quiet_NaN();
        out.value = 0.0;
        out.tail_bound = 0.0;
        return out;
    }

    // Increment exponent over the upper half of the ladder (rung 0 is the initial disk).
    std::vector<double> x, y;
    const std::size_t increments = out.ladder.size() - 1;
    const std::size_t take = std::max<std::size_t>(3, (increments + 1) / 2);
    for (std::size_t k = out.ladder.size() - std::min(take, increments); k < out.ladder.size(); ++k) {
        if (k == 0 || out.ladder[k].log_increment == neg_inf) continue;
        x.push_back(std::log(out.ladder[k].radius));
        y.push_back(out.ladder[k].log_increment);
    }
    if (x.size() >= 2) {
        const auto fit = fit_line(x, y);
        out.exponent = fit.slope;
        out.exponent_residual = fit.residual;
    } else {
        out.exponent = std::numeric_limits<double>::quiet_NaN();
    }

    const double last_inc = out.ladder.back().log_increment;
    if (out.stopped_early) {
        out.verdict = Verdict::converged;
        out.tail_bound = std::exp(last_inc);
    } else if (x.size() < 3) {
        out.verdict = Verdict::inconclusive;
    } else if (out.exponent < -ladder.tau) {
        out.verdict = Verdict::converged;
        // Geometric continuation of the increments, with a factor 2 of slack.
        const double ratio = std::pow(2.0, out.exponent / 2.0);
        out.tail_bound = 2.0 * std::exp(last_inc) * ratio / (1.0 - ratio);
    } else if (out.exponent > ladder.tau) {
        out.verdict = Verdict::diverging;
    } else {
        out.verdict = Verdict::inconclusive;
    }
    if (out.verdict == Verdict::converged) out.value = std::exp(total) + *out.tail_bound / 2.0;
    return out;
}

namespace
{

void check_ladder_domain(const EntireFunction &f, const LadderSpec &ladder)
{
    const auto radii = ladder_radii(ladder);
    if (radii.back() > f.domain_radius * (1.0 + 1e-12))
        throw std::domain_error("quadrature disk of radius " + std::to_string(radii.back()) + " exceeds the evaluation disk of " +
                                f.name + " (" + std::to_string(f.domain_radius) + ")");
}

NormEstimate with_power(NormEstimate est, double p)
{
    est.power = p;
    if (est.value) est.value = std::pow(*est.value, 1.0 / p);
    return est;
}

} // namespace

NormEstimate fock_p_norm(const EntireFunction &f, double p, const LadderSpec &ladder, const QuadratureSpec &spec)
{
    if (!(p >= 1.0)) throw std::invalid_argument("fock_p_norm: p must be >= 1");
    check_ladder_domain(f, ladder);
    const double log_half_p = std::log(p / 2.0);
    auto log_f = [&](cplx z) {
        const double l = f.eval(z).log_mag;
        return l == neg_inf ? neg_inf : p * l - p * pi / 2.0 * std::norm(z) + log_half_p;
    };
    return with_power(integrate_ladder(log_f, ladder, spec), p);
}

NormEstimate nu_integral(const EntireFunction &g, const NuMeasure &m, const LadderSpec &ladder, QuadratureSpec spec)
{
    if (!(m.p >= 1.0)) throw std::invalid_argument("nu_integral: p must be >= 1");
    check_ladder_domain(g, ladder);
    auto log_f = [&](cplx z) {
        const double l = g.eval(z).log_mag;
        return l == neg_inf ? neg_inf : m.p * l + m.log_density(z);
    };
    return integrate_ladder(log_f, ladder, spec);
}

NormEstimate membership_trend(const EntireFunction &f, double p, const LadderSpec &ladder, const QuadratureSpec &spec)
{
    return fock_p_norm(f, p, ladder, spec);
}

double gaussian_mass(const GaussianMeasure &m, double r_max, const QuadratureSpec &spec)
{
    if (!(m.beta > 0.0)) throw std::invalid_argument("GaussianMeasure: beta must be positive");
    auto log_f = [&](cplx z) { return m.log_density(z); };
    return std::exp(log_annulus_integral(log_f, 0.0, r_max, spec));
}

} // namespace fockzero
