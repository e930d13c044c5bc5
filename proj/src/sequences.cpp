#include "fockzero/sequences.hpp"

#include <algorithm>
#include <set>
#include <tuple>
#include <stdexcept>

namespace fockzero
{

namespace
{

constexpr double window_slack = 1e-12;

bool within(double modulus, double r) { return modulus <= r * (1.0 + window_slack); }

cplx canonical(cplx z) { return {z.real() + 0.0, z.imag() + 0.0}; }

void require_increasing(std::span<const double> radii, const char *what)
{
    for (std::size_t i = 1; i < radii.size(); ++i)
        if (!(radii[i] > radii[i - 1])) throw std::invalid_argument(std::string(what) + ": radii must be strictly increasing");
}

cplx inverse_power(cplx z, int rho)
{
    cplx zp = z;
    for (int k = 1; k < rho; ++k) zp *= z;
    return std::conj(zp) / std::norm(zp);
}

} // namespace

std::string to_string(Family f)
{
    switch (f) {
    case Family::gamma_nu: return "gamma-nu";
    case Family::als: return "als";
    case Family::zeros_of_s: return "zeros-of-s";
    case Family::custom: return "custom";
    }
    return "custom";
}

Family family_from_string(const std::string &s)
{
    if (s == "gamma-nu" || s == "lattice") return Family::gamma_nu;
    if (s == "als") return Family::als;
    if (s == "zeros-of-s") return Family::zeros_of_s;
    if (s == "custom") return Family::custom;
    throw std::invalid_argument("unknown family: " + s);
}

bool modulus_order(cplx a, cplx b)
{
    const double ma = std::abs(a), mb = std::abs(b);
    if (ma != mb) return ma < mb;
    return std::arg(a) < std::arg(b);
}

namespace
{

// Sorts items into modulus order with the keys computed once per item.
template <class T, class Key> void sort_by_modulus(std::vector<T> &items, Key key)
{
    std::vector<std::tuple<double, double, std::size_t>> keys(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        const cplx z = key(items[i]);
        keys[i] = {std::abs(z), std::arg(z), i};
    }
    std::sort(keys.begin(), keys.end());
    std::vector<T> sorted;
    sorted.reserve(items.size());
    for (const auto &k : keys) sorted.push_back(std::move(items[std::get<2>(k)]));
    items = std::move(sorted);
}

} // namespace

PointSet::PointSet(std::vector<Point> points, Family family, double nu, double radius)
    : family_(family), nu_(nu), radius_(radius)
{
    for (auto &p : points) {
        if (!std::isfinite(p.z.real()) || !std::isfinite(p.z.imag()))
            throw std::invalid_argument("PointSet: non-finite coordinate");
        if (p.multiplicity < 1) throw std::invalid_argument("PointSet: multiplicity must be >= 1");
        p.z = canonical(p.z);
    }
    sort_by_modulus(points, [](const Point &p) { return p.z; });
    for (const auto &p : points) {
        if (!points_.empty() && points_.back().z == p.z)
            points_.back().multiplicity += p.multiplicity;
        else
            points_.push_back(p);
    }
    contains_origin_ = !points_.empty() && points_.front().z == 0.0;
}

PointSet PointSet::from_values(const std::vector<cplx> &values, Family family, double nu, double radius)
{
    std::vector<Point> pts;
    pts.reserve(values.size());
    for (cplx z : values) pts.push_back({z, 1});
    return PointSet(std::move(pts), family, nu, radius);
}

std::size_t PointSet::total_multiplicity() const
{
    std::size_t n = 0;
    for (const auto &p : points_) n += static_cast<std::size_t>(p.multiplicity);
    return n;
}

double PointSet::max_modulus() const { return points_.empty() ? 0.0 : std::abs(points_.back().z); }

std::vector<cplx> PointSet::values() const
{
    std::vector<cplx> out;
    out.reserve(points_.size());
    for (const auto &p : points_) out.push_back(p.z);
    return out;
}

cplx LatticeIndex::point() const
{
    if (n != 0) return {static_cast<double>(m), static_cast<double>(n)};
    if (m < 0) return {static_cast<double>(m), 0.0};
    return {static_cast<double>(m) + nu, 0.0};
}

LatticeIndex lattice_index(cplx gamma, double nu)
{
    if (gamma.imag() != 0.0) return {std::lround(gamma.real()), std::lround(gamma.imag()), nu};
    if (gamma.real() < 0.0) return {std::lround(gamma.real()), 0, nu};
    return {std::lround(gamma.real() - nu), 0, nu};
}

PointSet gen_gamma_nu(double nu, double radius)
{
    if (!(nu >= 0.0 && nu <= 1.0)) throw std::invalid_argument("gen_gamma_nu: nu must lie in [0, 1]");
    if (!(radius >= 1.0)) throw std::invalid_argument("gen_gamma_nu: radius must be >= 1");
    const long top = static_cast<long>(std::floor(radius));
    std::vector<Point> pts;
    for (long n = -top; n <= top; ++n) {
        for (long m = -top - 1; m <= top; ++m) {
            const LatticeIndex idx{m, n, nu};
            const cplx g = idx.point();
            if (within(std::abs(g), radius)) pts.push_back({g, 1});
        }
    }
    return PointSet(std::move(pts), Family::gamma_nu, nu, radius);
}

namespace
{

void push_cross(std::vector<Point> &pts, double r)
{
    pts.push_back({{r, 0.0}, 1});
    pts.push_back({{-r, 0.0}, 1});
    pts.push_back({{0.0, r}, 1});
    pts.push_back({{0.0, -r}, 1});
}

long shell_count(double radius) { return static_cast<long>(std::floor(radius * radius / 2.0 + 1e-9)); }

} // namespace

PointSet gen_als(double radius)
{
    if (!(radius >= 1.0)) throw std::invalid_argument("gen_als: radius must be >= 1");
    std::vector<Point> pts{{{1.0, 0.0}, 1}, {{-1.0, 0.0}, 1}};
    const long shells = shell_count(radius);
    for (long n = 1; n <= shells; ++n) push_cross(pts, std::sqrt(2.0 * static_cast<double>(n)));
    return PointSet(std::move(pts), Family::als, 0.0, radius);
}

PointSet gen_zeros_of_s(double radius)
{
    if (!(radius * radius >= 2.0 * (1.0 - 1e-12))) throw std::invalid_argument("gen_zeros_of_s: radius must be >= sqrt(2)");
    std::vector<Point> pts;
    const long shells = std::max(1L, shell_count(radius));
    for (long n = 1; n <= shells; ++n) push_cross(pts, std::sqrt(2.0 * static_cast<double>(n)));
    return PointSet(std::move(pts), Family::zeros_of_s, 0.0, radius);
}

PointSet gen_integers(long count)
{
    if (count < 1) throw std::invalid_argument("gen_integers: count must be positive");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (long n = 1; n <= count; ++n) pts.push_back({{static_cast<double>(n), 0.0}, 1});
    return PointSet(std::move(pts), Family::custom, 0.0, static_cast<double>(count));
}

PointSet gen_powers(double exponent, long count)
{
    if (count < 1 || !(exponent > 0.0)) throw std::invalid_argument("gen_powers: need count >= 1 and exponent > 0");
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (long n = 1; n <= count; ++n) pts.push_back({{std::pow(static_cast<double>(n), exponent), 0.0}, 1});
    return PointSet(std::move(pts), Family::custom, 0.0, std::pow(static_cast<double>(count), exponent));
}

PointSet rotate(const PointSet &set, double angle)
{
    const cplx phase = std::polar(1.0, angle);
    std::vector<Point> out;
    out.reserve(set.size());
    for (const auto &p : set.points()) out.push_back({p.z * phase, p.multiplicity});
    return PointSet(std::move(out), Family::custom, set.nu(), set.radius());
}

// Perturbations ---------------------------------------------------------------

long als_shell(cplx gamma)
{
    const double r2 = std::norm(gamma);
    if (std::abs(r2 - 1.0) < 1e-9) return 0;
    const long n = std::lround(r2 / 2.0);
    if (n < 1 || std::abs(r2 - 2.0 * static_cast<double>(n)) > 1e-9 * r2)
        throw std::invalid_argument("als_shell: point is not on a sqrt(2n) shell");
    return n;
}

namespace
{

double spec_value(const PerturbationSpec &spec, cplx gamma, Family family)
{
    struct Visitor
    {
        cplx gamma;
        Family family;
        double operator()(const ZeroPerturbation &) const { return 0.0; }
        double operator()(const InverseSquarePerturbation &s) const
        {
            const double r2 = std::norm(gamma);
            return r2 == 0.0 ? 0.0 : s.c / r2;
        }
        double operator()(const ShellSchedulePerturbation &s) const
        {
            if (family != Family::als && family != Family::zeros_of_s)
                throw std::invalid_argument("shell schedule is only defined on the sqrt(2n) cross sequences");
            if (gamma.imag() != 0.0 || gamma.real() <= 0.0) return 0.0;
            const long n = als_shell(gamma);
            if (n == 0) return 0.0;
            if (s.pattern == ShellSchedulePerturbation::Pattern::harmonic) return s.d / static_cast<double>(n);
            return (n % 2 == 0 ? 1.0 : -1.0) * s.d;
        }
        double operator()(const TablePerturbation &t) const
        {
            auto it = t.values.find({gamma.real(), gamma.imag()});
            if (it == t.values.end())
                throw std::invalid_argument("perturbation table undefined at base point (" + std::to_string(gamma.real()) +
                                            ", " + std::to_string(gamma.imag()) + ")");
            return it->second;
        }
    };
    return std::visit(Visitor{gamma, family}, spec);
}

} // namespace

PerturbedSet::PerturbedSet(std::vector<PerturbedEntry> entries, Family family, double nu, double radius)
    : entries_(std::move(entries)), family_(family), nu_(nu), radius_(radius)
{
    for (auto &e : entries_) {
        e.base = canonical(e.base);
        e.lambda = canonical(e.lambda);
    }
    sort_by_modulus(entries_, [](const PerturbedEntry &e) { return e.base; });
    std::vector<cplx> lambdas;
    lambdas.reserve(entries_.size());
    for (auto &e : entries_) {
        if (!std::isfinite(e.lambda.real()) || !std::isfinite(e.lambda.imag()) || !std::isfinite(e.delta) ||
            !std::isfinite(e.theta))
            throw std::invalid_argument("PerturbedSet: non-finite entry");
        const double r2 = std::norm(e.base);
        sup_delta_ = std::max(sup_delta_, r2 * std::abs(e.delta));
        sup_theta_ = std::max(sup_theta_, r2 * std::abs(e.theta));
        lambdas.push_back(e.lambda);
    }
    std::sort(lambdas.begin(), lambdas.end(),
              [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    for (std::size_t i = 1; i < lambdas.size(); ++i)
        if (lambdas[i] == lambdas[i - 1]) ++collisions_;
}

bool PerturbedSet::unperturbed() const
{
    return std::all_of(entries_.begin(), entries_.end(), [](const PerturbedEntry &e) { return e.lambda == e.base; });
}

PointSet PerturbedSet::zeros() const
{
    std::vector<Point> pts;
    pts.reserve(entries_.size());
    for (const auto &e : entries_) pts.push_back({e.lambda, 1});
    return PointSet(std::move(pts), family_, nu_, radius_);
}

PointSet PerturbedSet::bases() const
{
    std::vector<Point> pts;
    pts.reserve(entries_.size());
    for (const auto &e : entries_) pts.push_back({e.base, 1});
    return PointSet(std::move(pts), family_, nu_, radius_);
}

PerturbedSet perturb(const PointSet &base, const PerturbationSpec &delta, const PerturbationSpec &theta)
{
    std::vector<PerturbedEntry> entries;
    entries.reserve(base.size());
    for (const auto &p : base.points()) {
        if (p.multiplicity != 1) throw std::invalid_argument("perturb: base points must be simple");
        PerturbedEntry e;
        e.base = p.z;
        e.delta = spec_value(delta, p.z, base.family());
        e.theta = spec_value(theta, p.z, base.family());
        e.lambda = (e.delta == 0.0 && e.theta == 0.0) ? p.z : p.z * std::polar(std::exp(e.delta), e.theta);
        entries.push_back(e);
    }
    return PerturbedSet(std::move(entries), base.family(), base.nu(), base.radius());
}

PerturbedSet unperturbed(const PointSet &base) { return perturb(base, ZeroPerturbation{}, ZeroPerturbation{}); }

// Statistics ----------------------------------------------------------------------

std::string to_string(StatKind k)
{
    switch (k) {
    case StatKind::delta_sum: return "delta-sum";
    case StatKind::shell_sum: return "shell-sum";
    case StatKind::counting: return "counting";
    case StatKind::power_sum: return "power-sum";
    case StatKind::lindelof_real: return "lindelof-real";
    case StatKind::lindelof_imag: return "lindelof-imag";
    }
    return "counting";
}

namespace
{

// Plane sweep in x with an ordered set of the active strip by y.
double sweep_separation(std::vector<cplx> pts)
{
    std::sort(pts.begin(), pts.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
    std::set<std::pair<double, std::size_t>> active;
    double best = inf;
    std::size_t left = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (left < i && pts[left].real() < pts[i].real() - best) {
            active.erase({pts[left].imag(), left});
            ++left;
        }
        const double y = pts[i].imag();
        for (auto it = active.lower_bound({y - best, 0}); it != active.end() && it->first <= y + best; ++it)
            best = std::min(best, std::abs(pts[i] - pts[it->second]));
        active.insert({y, i});
    }
    return best;
}

// Closest pair among points in adjacent cells of a grid with cell side h;
// exact whenever the result does not exceed h. Returns inf when the grid
// does not apply.
double bucket_separation(const std::vector<cplx> &pts)
{
    double lo_x = inf, hi_x = -inf, lo_y = inf, hi_y = -inf;
    for (cplx z : pts) {
        lo_x = std::min(lo_x, z.real());
        hi_x = std::max(hi_x, z.real());
        lo_y = std::min(lo_y, z.imag());
        hi_y = std::max(hi_y, z.imag());
    }
    const double area = (hi_x - lo_x) * (hi_y - lo_y);
    if (!(area > 0.0)) return inf;
    const double h = std::sqrt(area / static_cast<double>(pts.size()));
    const auto nx = static_cast<std::size_t>((hi_x - lo_x) / h) + 1;
    const auto ny = static_cast<std::size_t>((hi_y - lo_y) / h) + 1;
    if (nx * ny > 4 * pts.size() + 16) return inf;
    auto cell_of = [&](cplx z) {
        const auto cx = std::min(nx - 1, static_cast<std::size_t>((z.real() - lo_x) / h));
        const auto cy = std::min(ny - 1, static_cast<std::size_t>((z.imag() - lo_y) / h));
        return std::pair{cx, cy};
    };
    std::vector<std::size_t> start(nx * ny + 1, 0);
    for (cplx z : pts) {
        const auto [cx, cy] = cell_of(z);
        ++start[cy * nx + cx + 1];
    }
    for (std::size_t c = 1; c < start.size(); ++c) start[c] += start[c - 1];
    std::vector<std::size_t> order(pts.size());
    {
        auto fill = start;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto [cx, cy] = cell_of(pts[i]);
            order[fill[cy * nx + cx]++] = i;
        }
    }
    double best = inf;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto [cx, cy] = cell_of(pts[i]);
        for (std::size_t y = cy == 0 ? 0 : cy - 1; y <= std::min(ny - 1, cy + 1); ++y)
            for (std::size_t x = cx == 0 ? 0 : cx - 1; x <= std::min(nx - 1, cx + 1); ++x)
                for (std::size_t k = start[y * nx + x]; k < start[y * nx + x + 1]; ++k)
                    if (order[k] != i) best = std::min(best, std::abs(pts[i] - pts[order[k]]));
    }
    return best <= h ? best : inf;
}

} // namespace

double separation(const PointSet &set)
{
    if (set.total_multiplicity() < 2) throw std::invalid_argument("separation: need at least two points");
    for (const auto &p : set.points())
        if (p.multiplicity > 1) return 0.0;
    std::vector<cplx> pts = set.values();
    const double fast = bucket_separation(pts);
    return fast < inf ? fast : sweep_separation(std::move(pts));
}

double separation(const PerturbedSet &set)
{
    if (set.size() < 2) throw std::invalid_argument("separation: need at least two points");
    if (set.collisions() > 0) return 0.0;
    std::vector<cplx> pts;
    pts.reserve(set.size());
    for (const auto &e : set.entries()) pts.push_back(e.lambda);
    const double fast = bucket_separation(pts);
    return fast < inf ? fast : sweep_separation(std::move(pts));
}

double als_separation_constant(const PerturbedSet &set)
{
    if (set.family() != Family::als) throw std::invalid_argument("als_separation_constant: family must be als");
    if (set.size() < 2) throw std::invalid_argument("als_separation_constant: need at least two points");
    std::vector<const PerturbedEntry *> order;
    for (const auto &e : set.entries()) order.push_back(&e);
    std::sort(order.begin(), order.end(),
              [](const PerturbedEntry *a, const PerturbedEntry *b) { return std::abs(a->lambda) < std::abs(b->lambda); });
    std::vector<double> suffix_min(order.size());
    double running = inf;
    for (std::size_t i = order.size(); i-- > 0;) {
        running = std::min(running, std::abs(order[i]->base));
        suffix_min[i] = running;
    }
    double best = inf;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const double ri = std::abs(order[i]->lambda);
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            if ((std::abs(order[j]->lambda) - ri) * suffix_min[i] >= best) break;
            const double v = std::abs(order[i]->lambda - order[j]->lambda) *
                             std::min(std::abs(order[i]->base), std::abs(order[j]->base));
            best = std::min(best, v);
        }
    }
    return best;
}

RadialStats counting_function(const PointSet &set, std::span<const double> radii)
{
    require_increasing(radii, "counting_function");
    RadialStats out{{radii.begin(), radii.end()}, {}, StatKind::counting};
    out.values.reserve(radii.size());
    std::size_t idx = 0;
    double count = 0.0;
    const auto &pts = set.points();
    for (double r : radii) {
        while (idx < pts.size() && within(std::abs(pts[idx].z), r)) count += pts[idx++].multiplicity;
        out.values.push_back(count);
    }
    return out;
}

RadialStats power_sum_profile(const PointSet &set, double s, std::span<const double> radii)
{
    if (!(s > 0.0)) throw std::invalid_argument("power_sum: exponent must be positive");
    require_increasing(radii, "power_sum");
    RadialStats out{{radii.begin(), radii.end()}, {}, StatKind::power_sum};
    ExactSum acc;
    std::size_t idx = 0;
    const auto &pts = set.points();
    for (double r : radii) {
        for (; idx < pts.size() && within(std::abs(pts[idx].z), r); ++idx) {
            const double m = std::abs(pts[idx].z);
            if (m == 0.0) continue;
            acc += pts[idx].multiplicity * std::pow(m, -s);
        }
        out.values.push_back(acc.value());
    }
    return out;
}

double power_sum(const PointSet &set, double s, double r)
{
    const double radii[] = {r};
    return power_sum_profile(set, s, radii).values.front();
}

std::vector<cplx> lindelof_profile(const PointSet &set, int rho, std::span<const double> radii)
{
    if (rho < 1) throw std::invalid_argument("lindelof_sum: rho must be >= 1");
    require_increasing(radii, "lindelof_sum");
    std::vector<cplx> out;
    out.reserve(radii.size());
    ExactComplexSum acc;
    std::size_t idx = 0;
    const auto &pts = set.points();
    for (double r : radii) {
        for (; idx < pts.size() && within(std::abs(pts[idx].z), r); ++idx) {
            if (pts[idx].z == 0.0) continue;
            const cplx v = inverse_power(pts[idx].z, rho);
            for (int k = 0; k < pts[idx].multiplicity; ++k) acc.add(v);
        }
        out.push_back(acc.value());
    }
    return out;
}

cplx lindelof_sum(const PointSet &set, int rho, double r)
{
    const double radii[] = {r};
    return lindelof_profile(set, rho, radii).front();
}

ExponentEstimate convergence_exponent(const PointSet &set)
{
    const double top = set.max_modulus();
    double bottom = inf;
    for (const auto &p : set.points())
        if (p.z != 0.0) bottom = std::min(bottom, std::abs(p.z));
    if (set.total_multiplicity() < 100 || !(top > 0.0) || bottom > top / 10.0)
        throw std::invalid_argument("convergence_exponent: insufficient span (need >= 100 points over a decade of moduli)");
    const auto radii = log_grid(top / 10.0, top, 64);
    const auto counts = counting_function(set, radii);
    std::vector<double> x, y;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (counts.values[i] <= 0.0) continue;
        x.push_back(std::log(radii[i]));
        y.push_back(std::log(counts.values[i]));
    }
    const auto fit = fit_line(x, y);
    return {fit.slope, fit.residual};
}

DeltaStats delta_stats(const PerturbedSet &set, std::span<const double> radii)
{
    require_increasing(radii, "delta_stats");
    if (radii.size() < 4) throw std::invalid_argument("delta_stats: need at least 4 radii");
    if (!(radii.front() > 1.0)) throw std::invalid_argument("delta_stats: every radius must exceed 1");
    if (radii.back() < 100.0 * radii.front() * (1.0 - 1e-9))
        throw std::invalid_argument("delta_stats: radii must span at least two decades");

    DeltaStats out;
    out.normalized = {{radii.begin(), radii.end()}, {}, StatKind::delta_sum};
    std::vector<double> sums;
    ExactSum acc;
    std::size_t idx = 0;
    const auto &entries = set.entries();
    for (double r : radii) {
        while (idx < entries.size() && within(std::abs(entries[idx].base), r)) acc += entries[idx++].delta;
        sums.push_back(acc.value());
        out.normalized.values.push_back(sums.back() / std::log(r));
    }
    const std::size_t n = radii.size();
    const std::size_t h = n / 2;
    out.delta_hat_proxy = inf;
    out.delta_proxy = -inf;
    out.ratio_min = inf;
    out.ratio_max = -inf;
    for (std::size_t j = h; j < n; ++j) {
        const double q = (sums[j] - sums[j - h]) / std::log(radii[j] / radii[j - h]);
        out.delta_hat_proxy = std::min(out.delta_hat_proxy, q);
        out.delta_proxy = std::max(out.delta_proxy, q);
        out.ratio_min = std::min(out.ratio_min, out.normalized.values[j]);
        out.ratio_max = std::max(out.ratio_max, out.normalized.values[j]);
    }
    return out;
}

ShellDeltaStats shell_delta_stats(const PerturbedSet &set, long avdonin_window)
{
    if (set.family() != Family::als) throw std::invalid_argument("shell_delta_stats: family must be als");
    if (avdonin_window < 1) throw std::invalid_argument("shell_delta_stats: Avdonin window must be >= 1");
    long n_max = 0;
    for (const auto &e : set.entries()) n_max = std::max(n_max, als_shell(e.base));
    ShellDeltaStats out;
    out.avdonin_window = avdonin_window;
    out.shell_sums.assign(static_cast<std::size_t>(n_max), 0.0);
    {
        std::vector<ExactSum> per_shell(static_cast<std::size_t>(n_max));
        for (const auto &e : set.entries()) {
            const long k = als_shell(e.base);
            if (k >= 1) per_shell[static_cast<std::size_t>(k - 1)] += e.delta;
        }
        for (long k = 0; k < n_max; ++k) out.shell_sums[static_cast<std::size_t>(k)] = per_shell[static_cast<std::size_t>(k)].value();
    }
    // prefix[n] = sum_{k <= n} Delta_k
    std::vector<double> prefix(static_cast<std::size_t>(n_max) + 1, 0.0);
    {
        ExactSum acc;
        for (long k = 1; k <= n_max; ++k) {
            acc += out.shell_sums[static_cast<std::size_t>(k - 1)];
            prefix[static_cast<std::size_t>(k)] = acc.value();
        }
    }
    if (n_max >= 4) {
        std::vector<long> grid;
        for (double g : log_grid(1.0, static_cast<double>(n_max), 64)) {
            const long n = std::lround(g);
            if (grid.empty() || n > grid.back()) grid.push_back(n);
        }
        const std::size_t h = grid.size() / 2;
        for (std::size_t j = h; j < grid.size(); ++j) {
            const auto nj = static_cast<std::size_t>(grid[j]);
            const auto nh = static_cast<std::size_t>(grid[j - h]);
            if (grid[j] >= 2) out.ratio_proxy = std::max(out.ratio_proxy, std::abs(prefix[nj]) / std::log(static_cast<double>(nj)));
            if (nj > nh)
                out.delta_proxy = std::max(out.delta_proxy, std::abs(prefix[nj] - prefix[nh]) /
                                                                std::log(static_cast<double>(nj) / static_cast<double>(nh)));
        }
    }
    for (long n = 0; n + avdonin_window <= n_max; ++n) {
        const double window = prefix[static_cast<std::size_t>(n + avdonin_window)] - prefix[static_cast<std::size_t>(n)];
        out.avdonin_sup = std::max(out.avdonin_sup, static_cast<double>(n + 1) / static_cast<double>(avdonin_window) * std::abs(window));
    }
    return out;
}

int sector_index(cplx z)
{
    double u = std::arg(z) + pi / 8.0;
    if (u < 0.0) u += 2.0 * pi;
    if (u >= 2.0 * pi) u -= 2.0 * pi;
    const int k = static_cast<int>(std::floor(u / (pi / 4.0)));
    return std::clamp(k, 0, 7);
}

std::array<PointSet, 8> sector_partition(const PointSet &set)
{
    std::array<std::vector<Point>, 8> parts;
    for (const auto &p : set.points()) parts[static_cast<std::size_t>(sector_index(p.z))].push_back(p);
    std::array<PointSet, 8> out;
    for (std::size_t k = 0; k < 8; ++k) out[k] = PointSet(std::move(parts[k]), Family::custom, set.nu(), set.radius());
    return out;
}

bool in_sector(cplx z, double beta, double theta)
{
    if (!(theta >= 0.0 && theta <= pi)) throw std::invalid_argument("in_sector: theta must lie in [0, pi]");
    if (z == 0.0) return true;
    const double tol = 1e-12;
    const double d1 = std::abs(wrap_angle(std::arg(z) - beta));
    const double d2 = std::abs(wrap_angle(std::arg(-z) - beta));
    return d1 <= theta + tol || d2 <= theta + tol;
}

} // namespace fockzero
