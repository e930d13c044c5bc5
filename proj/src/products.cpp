#include "fockzero/products.hpp"

#include "fockzero/special.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <stdexcept>

namespace fockzero
{

namespace
{

constexpr cplx I{0.0, 1.0};

std::pair<double, double> key(cplx z) { return {z.real() + 0.0, z.imag() + 0.0}; }

// log sin(pi t) with the integer part of Re t removed first, so that the
// value stays relatively accurate near the zeros.
cplx log_sin_pi(cplx t)
{
    const double n = std::round(t.real());
    return special::log_sin(pi * (t - n)) + I * pi * n;
}

// Sentinel test for zeros of sin(pi z^2 / 2): z^2 / 2 within a few ulps of a
// nonzero integer.
bool near_integer(cplx t)
{
    const double n = std::round(t.real());
    if (n == 0.0) return false;
    const double tol = 8.0 * DBL_EPSILON * std::max(1.0, std::abs(t));
    return std::abs(t.real() - n) <= tol && std::abs(t.imag()) <= tol;
}

cplx log_s(cplx z)
{
    const double log_half_pi = std::log(pi / 2.0);
    if (z == 0.0) return log_half_pi;
    const cplx t = z * z / 2.0;
    if (near_integer(t)) return {neg_inf, 0.0};
    if (std::abs(t) < 0.25) return log_half_pi + special::log_sinc(pi * t);
    return log_sin_pi(t) - 2.0 * std::log(z);
}

cplx log_G_Gamma(cplx z)
{
    if (z == 1.0 || z == -1.0) return {neg_inf, 0.0};
    return std::log(z - 1.0) + std::log(z + 1.0) + log_s(z) - std::log(pi);
}

// log(1 - u) - (-u - u^2/2) = -sum_{k>=3} u^k / k for |u| < 1/4.
cplx log1m_cubic_remainder(cplx u)
{
    cplx power = u * u * u;
    cplx acc = 0.0;
    for (int k = 3; k < 64; ++k) {
        const cplx term = power / static_cast<double>(k);
        acc -= term;
        if (std::abs(term) < 1e-18 * (1e-300 + std::abs(acc))) break;
        power *= u;
    }
    return acc;
}

} // namespace

// LogComplex ----------------------------------------------------------------

LogComplex LogComplex::from_log(cplx l)
{
    if (l.real() == neg_inf) return zero();
    if (std::isnan(l.real())) throw std::domain_error("LogComplex: undefined value");
    return {l.real(), std::isfinite(l.imag()) ? wrap_angle(l.imag()) : 0.0};
}

LogComplex LogComplex::from_value(cplx v)
{
    if (v == 0.0) return zero();
    return from_log(std::log(v));
}

cplx LogComplex::value() const
{
    if (is_zero()) return 0.0;
    return std::polar(std::exp(log_mag), arg);
}

LogComplex operator*(LogComplex a, LogComplex b)
{
    if (a.is_zero() || b.is_zero()) return LogComplex::zero();
    return {a.log_mag + b.log_mag, wrap_angle(a.arg + b.arg)};
}

LogComplex operator/(LogComplex a, LogComplex b)
{
    if (b.is_zero()) throw std::domain_error("LogComplex: division by zero");
    if (a.is_zero()) return LogComplex::zero();
    return {a.log_mag - b.log_mag, wrap_angle(a.arg - b.arg)};
}

// Closed forms ------------------------------------------------------------------

std::string to_string(ClosedForm f)
{
    switch (f) {
    case ClosedForm::s: return "s";
    case ClosedForm::S: return "S";
    case ClosedForm::G_Gamma: return "G_Gamma";
    case ClosedForm::kernel: return "kernel";
    }
    return "s";
}

ClosedForm closed_form_from_string(const std::string &s)
{
    if (s == "s") return ClosedForm::s;
    if (s == "S") return ClosedForm::S;
    if (s == "G_Gamma" || s == "G-Gamma") return ClosedForm::G_Gamma;
    if (s == "kernel") return ClosedForm::kernel;
    throw std::invalid_argument("unknown closed form: " + s);
}

LogComplex eval_closed(ClosedForm f, cplx z, cplx w)
{
    switch (f) {
    case ClosedForm::s: return LogComplex::from_log(log_s(z));
    case ClosedForm::S:
    case ClosedForm::G_Gamma: return LogComplex::from_log(log_G_Gamma(z));
    case ClosedForm::kernel: return LogComplex::from_log(pi * std::conj(w) * z);
    }
    throw std::invalid_argument("eval_closed: unknown form");
}

LogComplex lattice_closed_form(double nu, cplx z)
{
    if (nu == 0.0) return LogComplex::from_log(special::log_sigma(z));
    if (z == nu) return LogComplex::zero();
    // sigma(z) (z - nu)/z * Gamma(1 + nu) Gamma(1 - z) / Gamma(1 + nu - z), with
    // Gamma(1 - z) = pi z / (sin(pi z) Gamma(1 + z)).
    const cplx l = special::log_sigma_over_sin(z) - special::log_gamma(1.0 + z) + std::log(pi) + std::log(z - nu) +
                   std::lgamma(1.0 + nu) - special::log_gamma(1.0 + nu - z);
    return LogComplex::from_log(l);
}

// Function handles -----------------------------------------------------------------

LogComplex EntireFunction::operator()(cplx z) const
{
    if (std::abs(z) > domain_radius * (1.0 + 1e-12))
        throw std::domain_error(name + ": |z| = " + std::to_string(std::abs(z)) + " outside evaluation disk of radius " +
                                std::to_string(domain_radius));
    return eval(z);
}

EntireFunction closed_form(ClosedForm f, cplx w)
{
    std::string name = to_string(f);
    if (f == ClosedForm::kernel) name += "(" + std::to_string(w.real()) + "," + std::to_string(w.imag()) + ")";
    return {name, [f, w](cplx z) { return eval_closed(f, z, w); }, inf};
}

EntireFunction constant_function(cplx c)
{
    const LogComplex v = LogComplex::from_value(c);
    return {"constant", [v](cplx) { return v; }, inf};
}

EntireFunction monomial(int k)
{
    if (k < 0) throw std::invalid_argument("monomial: degree must be >= 0");
    return {"z^" + std::to_string(k),
            [k](cplx z) {
                if (k == 0) return LogComplex::one();
                if (z == 0.0) return LogComplex::zero();
                return LogComplex::from_log(static_cast<double>(k) * std::log(z));
            },
            inf};
}

EntireFunction times_monomial(EntireFunction f, int k)
{
    if (k < 0) throw std::invalid_argument("times_monomial: degree must be >= 0");
    const double domain = f.domain_radius;
    std::string name = "z^" + std::to_string(k) + "*" + f.name;
    return {name,
            [f = std::move(f), k](cplx z) {
                const LogComplex v = f.eval(z);
                if (k == 0) return v;
                if (z == 0.0) return LogComplex::zero();
                return v * LogComplex::from_log(static_cast<double>(k) * std::log(z));
            },
            domain};
}

EntireFunction divided_by_linear(EntireFunction f, cplx a)
{
    const double domain = f.domain_radius;
    const double rho = 1e-3 * std::max(1.0, std::abs(a));
    std::string name = f.name + "/(z-a)";
    auto eval = [f = std::move(f), a, rho](cplx z) -> LogComplex {
        if (std::abs(z - a) >= rho / 2.0) return f.eval(z) / LogComplex::from_value(z - a);
        // Cauchy integral over |zeta - a| = rho with the trapezoid rule.
        constexpr int nodes = 48;
        std::array<cplx, nodes> logs;
        std::array<cplx, nodes> weights;
        double top = neg_inf;
        for (int j = 0; j < nodes; ++j) {
            const cplx offset = std::polar(rho, 2.0 * pi * j / nodes);
            const cplx zeta = a + offset;
            const LogComplex g = f.eval(zeta) / LogComplex::from_value(offset);
            logs[static_cast<std::size_t>(j)] = g.log();
            weights[static_cast<std::size_t>(j)] = offset / (zeta - z);
            top = std::max(top, g.log_mag);
        }
        if (top == neg_inf) return LogComplex::zero();
        cplx acc = 0.0;
        for (int j = 0; j < nodes; ++j) {
            const cplx l = logs[static_cast<std::size_t>(j)];
            if (l.real() == neg_inf) continue;
            acc += std::exp(l - top) * weights[static_cast<std::size_t>(j)];
        }
        acc /= static_cast<double>(nodes);
        if (acc == 0.0) return LogComplex::zero();
        return LogComplex::from_log(top + std::log(acc));
    };
    return {name, std::move(eval), domain};
}

double weighted_log_mag(LogComplex value, cplx z) { return value.log_mag - pi / 2.0 * std::norm(z); }

double weighted_log_mag(const EntireFunction &f, cplx z) { return weighted_log_mag(f(z), z); }

// Lattice product --------------------------------------------------------------------

LatticeProductEvaluator::LatticeProductEvaluator(const PerturbedSet &set, double truncation_radius, int tail_order)
    : nu_(set.nu()), radius_(truncation_radius), tail_order_(tail_order)
{
    if (set.family() != Family::gamma_nu) throw std::invalid_argument("lattice evaluator: family must be gamma-nu");
    if (!(truncation_radius >= 4.0)) throw std::invalid_argument("lattice evaluator: truncation radius must be >= 4");
    if (tail_order < 1 || tail_order > 40) throw std::invalid_argument("lattice evaluator: tail order must lie in [1, 40]");
    if (set.radius() < truncation_radius * (1.0 - 1e-12))
        throw std::invalid_argument("lattice evaluator: window radius " + std::to_string(set.radius()) +
                                    " is smaller than the truncation radius");
    if (set.collisions() > 0) throw std::invalid_argument("lattice evaluator: perturbed points collide");

    long row_max = 0; // largest m >= 0 on the real row inside the truncation disk
    for (const auto &e : set.entries()) {
        zeros_.insert(key(e.lambda));
        if (std::abs(e.base) > truncation_radius * (1.0 + 1e-12)) continue;
        const LatticeIndex idx = lattice_index(e.base, nu_);
        if (idx.point() != e.base) throw std::invalid_argument("lattice evaluator: entry is not a point of Gamma_nu");
        const Factor f{e.base, e.lambda, idx.node(), idx.m == 0 && idx.n == 0};
        factors_.push_back(f);
        if (e.lambda != e.base) {
            perturbed_.push_back(f);
            moved_bases_.insert(key(e.base));
            const double r2 = std::norm(e.base);
            perturbation_constant_ = std::max(perturbation_constant_, r2 * (std::abs(e.delta) + std::abs(e.theta)));
        }
        if (idx.n == 0 && idx.m >= 0) row_max = std::max(row_max, idx.m);
    }

    // T_k = sum over the unperturbed tail of gamma^{-k}, minus node^{-k} for k <= 2.
    const int kmax = tail_order + 8;
    std::vector<long double> square(static_cast<std::size_t>(kmax) + 1, 0.0L), square_abs(square);
    std::vector<long double> square_c(square.size(), 0.0L);
    for (const auto &f : factors_) {
        if (f.origin) continue;
        const std::complex<long double> inv = 1.0L / std::complex<long double>(f.node.real(), f.node.imag());
        const long double inv_abs = std::abs(inv);
        std::complex<long double> power = inv;
        long double power_abs = inv_abs;
        for (int k = 1; k <= kmax; ++k) {
            if (k >= 3 && (k % 4 == 0 || nu_ != 0.0)) {
                // Neumaier summation of the real parts; imaginary parts cancel under conjugation.
                const long double x = power.real();
                const long double t = square[static_cast<std::size_t>(k)] + x;
                if (std::abs(square[static_cast<std::size_t>(k)]) >= std::abs(x))
                    square_c[static_cast<std::size_t>(k)] += (square[static_cast<std::size_t>(k)] - t) + x;
                else
                    square_c[static_cast<std::size_t>(k)] += (x - t) + square[static_cast<std::size_t>(k)];
                square[static_cast<std::size_t>(k)] = t;
                square_abs[static_cast<std::size_t>(k)] += power_abs;
            }
            power *= inv;
            power_abs *= inv_abs;
        }
    }
    // The same sums over the annulus R_t < |gamma| <= 2 R_t, summed directly.
    // Beyond 2 R_t the area bound is small enough for the higher orders,
    // where subtracting from the full lattice sum loses everything to rounding.
    const double outer = 2.0 * truncation_radius;
    std::vector<long double> annulus(static_cast<std::size_t>(kmax) + 1, 0.0L), annulus_abs(annulus);
    const long reach = static_cast<long>(std::ceil(outer)) + 1;
    for (long n = -reach; n <= reach; ++n) {
        for (long m = -reach; m <= reach; ++m) {
            const cplx g = LatticeIndex{m, n, nu_}.point();
            const double r = std::abs(g);
            if (r <= truncation_radius * (1.0 + 1e-12) || r > outer) continue;
            const std::complex<long double> inv = 1.0L / std::complex<long double>(g.real(), g.imag());
            std::complex<long double> power = inv;
            for (int k = 1; k <= kmax; ++k) {
                annulus[static_cast<std::size_t>(k)] += power.real();
                annulus_abs[static_cast<std::size_t>(k)] += std::abs(power);
                power *= inv;
            }
        }
    }
    auto area_bound = [](double edge, int k) { return 2.0 * pi * std::pow(edge - 1.5, 2.0 - k) / (k - 2.0); };

    tail_.resize(static_cast<std::size_t>(kmax));
    tail_error_.resize(static_cast<std::size_t>(kmax));
    for (int k = 1; k <= kmax; ++k) {
        const auto i = static_cast<std::size_t>(k);
        const double row = special::shifted_row_tail(k, nu_, row_max + 1);
        double t = row;
        double error = 4.0 * DBL_EPSILON * std::abs(row);
        if (k >= 3) {
            const long double e = special::gaussian_eisenstein_ld(k);
            const double subtracted = static_cast<double>(e - (square[i] + square_c[i])) + row;
            const double subtracted_error =
                static_cast<double>(8.0L * LDBL_EPSILON * (std::abs(e) + square_abs[i])) + error;
            const double summed = static_cast<double>(annulus[i]);
            const double summed_error =
                area_bound(outer, k) + static_cast<double>(8.0L * LDBL_EPSILON * annulus_abs[i]);
            if (subtracted_error <= summed_error) {
                t = subtracted;
                error = subtracted_error;
            } else {
                t = summed;
                error = summed_error;
            }
        }
        tail_[i - 1] = t;
        tail_error_[i - 1] = error + DBL_EPSILON * std::abs(t);
    }
}

bool LatticeProductEvaluator::listed(cplx z) const { return zeros_.count(key(z)) > 0; }

void LatticeProductEvaluator::check_domain(cplx z) const
{
    if (std::abs(z) > domain_radius() * (1.0 + 1e-12))
        throw std::domain_error("lattice product: |z| = " + std::to_string(std::abs(z)) + " exceeds R_t/4 = " +
                                std::to_string(domain_radius()));
}

LogComplex LatticeProductEvaluator::direct(cplx z) const
{
    if (listed(z)) return LogComplex::zero();
    check_domain(z);
    cplx acc = 0.0;
    for (const auto &f : factors_) {
        if (f.origin) {
            acc += std::log(z - f.lambda);
            continue;
        }
        const cplx u = z / f.lambda;
        const cplx a = z / f.node;
        if (std::abs(u) < 0.25)
            acc += log1m_cubic_remainder(u) + (a - u) + (a * a - u * u) / 2.0;
        else
            acc += std::log(1.0 - u) + a + a * a / 2.0;
    }
    cplx power = 1.0;
    for (int k = 1; k <= tail_order_; ++k) {
        power *= z;
        acc -= power * tail_[static_cast<std::size_t>(k - 1)] / static_cast<double>(k);
    }
    return LogComplex::from_log(acc);
}

double LatticeProductEvaluator::tail_bound(double r) const
{
    const int kmax = tail_order_ + 8;
    double bound = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        const double rk = std::pow(r, k) / k;
        const auto i = static_cast<std::size_t>(k - 1);
        bound += rk * (tail_error_[i] + (k > tail_order_ ? std::abs(tail_[i]) : 0.0));
    }
    // Beyond the computed orders: sum_{|gamma| > R_t} |gamma|^{-k} <= 2 pi (R_t - 1.5)^{2-k} / (k - 2).
    const double edge = radius_ - 1.5;
    const int k0 = kmax + 1;
    const double ratio = r / edge;
    bound += 2.0 * pi * edge * edge * std::pow(ratio, k0) / (k0 * (k0 - 2.0)) / (1.0 - ratio);
    // Rounding in the truncated sum itself.
    bound += 4.0 * DBL_EPSILON * static_cast<double>(factors_.size()) * std::max(1.0, r);
    return bound;
}

double LatticeProductEvaluator::perturbation_tail_bound(double r) const
{
    return 4.0 / 3.0 * r * perturbation_constant_ * 2.0 * pi / radius_;
}

LogComplex LatticeProductEvaluator::operator()(cplx z) const
{
    if (listed(z)) return LogComplex::zero();
    check_domain(z);
    if (moved_bases_.count(key(z))) return direct(z);
    const LogComplex base = lattice_closed_form(nu_, z);
    if (base.is_zero()) return direct(z);
    cplx acc = base.log();
    for (const auto &f : perturbed_) {
        if (f.origin)
            acc += std::log(z - f.lambda) - std::log(z - f.gamma);
        else
            acc += std::log(1.0 - z / f.lambda) - std::log(1.0 - z / f.gamma);
    }
    return LogComplex::from_log(acc);
}

// ALS product ---------------------------------------------------------------------------

namespace
{

constexpr int als_series_terms = 96;

} // namespace

ALSProductEvaluator::ALSProductEvaluator(const PerturbedSet &set)
{
    if (set.family() != Family::als) throw std::invalid_argument("ALS evaluator: family must be als");
    if (set.collisions() > 0) throw std::invalid_argument("ALS evaluator: perturbed points collide");
    for (const auto &e : set.entries()) n_max_ = std::max(n_max_, als_shell(e.base));
    if (n_max_ < 1) throw std::invalid_argument("ALS evaluator: window holds no sqrt(2n) shell");

    std::vector<std::vector<const PerturbedEntry *>> shells(static_cast<std::size_t>(n_max_) + 1);
    for (const auto &e : set.entries()) {
        shells[static_cast<std::size_t>(als_shell(e.base))].push_back(&e);
        zeros_.insert(key(e.lambda));
    }
    is_perturbed_.assign(shells.size(), 0);
    for (long n = 0; n <= n_max_; ++n) {
        const auto &shell = shells[static_cast<std::size_t>(n)];
        const std::size_t expected = n == 0 ? 2 : 4;
        if (shell.size() != expected)
            throw std::invalid_argument("ALS evaluator: shell " + std::to_string(n) + " is incomplete");
        const bool moved =
            std::any_of(shell.begin(), shell.end(), [](const PerturbedEntry *e) { return e->lambda != e->base; });
        if (moved) {
            is_perturbed_[static_cast<std::size_t>(n)] = 1;
            Shell s{n, {}};
            for (const auto *e : shell) s.lambdas.push_back(e->lambda);
            perturbed_.push_back(std::move(s));
        }
    }

    for (long s = std::min<long>(16, n_max_); s < n_max_; s = std::max(s + 1, static_cast<long>(std::ceil(1.1 * s))))
        splits_.push_back(s);
    splits_.push_back(n_max_);

    // P_j(s) = sum over unperturbed n > s of n^{-2j}, accumulated from the far end.
    std::vector<double> acc(als_series_terms);
    for (int j = 1; j <= als_series_terms; ++j)
        acc[static_cast<std::size_t>(j - 1)] = special::hurwitz_zeta(2.0 * j, static_cast<double>(n_max_) + 1.0);
    partial_zeta_.assign(splits_.size(), {});
    long upper = n_max_;
    for (std::size_t i = splits_.size(); i-- > 0;) {
        for (long n = upper; n > splits_[i]; --n) {
            if (is_perturbed_[static_cast<std::size_t>(n)]) continue;
            const double inv2 = 1.0 / (static_cast<double>(n) * static_cast<double>(n));
            double power = inv2;
            for (int j = 0; j < als_series_terms && power > 1e-300; ++j) {
                acc[static_cast<std::size_t>(j)] += power;
                power *= inv2;
            }
        }
        upper = splits_[i];
        partial_zeta_[i] = acc;
    }
}

LogComplex ALSProductEvaluator::operator()(cplx z) const
{
    if (zeros_.count(key(z))) return LogComplex::zero();
    if (std::abs(z) > domain_radius() * (1.0 + 1e-12))
        throw std::domain_error("ALS product: |z| = " + std::to_string(std::abs(z)) + " exceeds sqrt(2 n_max)/2 = " +
                                std::to_string(domain_radius()));
    const cplx w = z * z / 2.0;
    const double need = std::abs(w) * std::sqrt(2.0);
    std::size_t split = 0;
    while (split + 1 < splits_.size() && static_cast<double>(splits_[split]) < need) ++split;
    const long s = splits_[split];

    auto shell_log = [&z](const Shell &shell) {
        cplx l = 0.0;
        for (cplx lambda : shell.lambdas) l += std::log(1.0 - z / lambda);
        return l;
    };

    cplx acc = 0.0;
    auto next = perturbed_.begin();
    if (next != perturbed_.end() && next->n == 0)
        acc += shell_log(*next++);
    else
        acc += std::log(1.0 - z) + std::log(1.0 + z);
    // Unperturbed shells are multiplied in chunks and logged once per chunk;
    // the factors are bounded by 1 + |w|^2, so a chunk cannot overflow.
    cplx chunk = 1.0;
    int in_chunk = 0;
    for (long n = 1; n <= s; ++n) {
        if (next != perturbed_.end() && next->n == n) {
            acc += shell_log(*next++);
        } else {
            const double dn = static_cast<double>(n);
            chunk *= (1.0 - w / dn) * (1.0 + w / dn);
            if (++in_chunk == 8) {
                acc += std::log(chunk);
                chunk = 1.0;
                in_chunk = 0;
            }
        }
    }
    acc += std::log(chunk);
    for (; next != perturbed_.end(); ++next) acc += shell_log(*next);

    // log prod_{n > s unperturbed} (1 - w^2/n^2) = -sum_j w^{2j} P_j(s) / j
    const cplx w2 = w * w;
    cplx power = w2;
    const auto &p = partial_zeta_[split];
    for (int j = 1; j <= als_series_terms; ++j) {
        const cplx term = power * p[static_cast<std::size_t>(j - 1)] / static_cast<double>(j);
        acc -= term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) break;
        power *= w2;
    }
    return LogComplex::from_log(acc);
}

EntireFunction lattice_function(const PerturbedSet &set, double truncation_radius, int tail_order)
{
    auto ev = std::make_shared<const LatticeProductEvaluator>(set, truncation_radius, tail_order);
    std::string name = "G_Lambda(lattice, nu=" + std::to_string(set.nu()) + ")";
    const double domain = ev->domain_radius();
    return {name, [ev](cplx z) { return (*ev)(z); }, domain};
}

EntireFunction als_function(const PerturbedSet &set)
{
    auto ev = std::make_shared<const ALSProductEvaluator>(set);
    const double domain = ev->domain_radius();
    return {"G_Lambda(als)", [ev](cplx z) { return (*ev)(z); }, domain};
}

// Nearest point ---------------------------------------------------------------------------------

NearestPointIndex::NearestPointIndex(const std::vector<cplx> &points) : points_(points)
{
    if (points_.empty()) throw std::invalid_argument("dist_to_set: empty set");
    double hi_x = -inf, hi_y = -inf;
    lo_x_ = inf;
    lo_y_ = inf;
    for (cplx p : points_) {
        lo_x_ = std::min(lo_x_, p.real());
        lo_y_ = std::min(lo_y_, p.imag());
        hi_x = std::max(hi_x, p.real());
        hi_y = std::max(hi_y, p.imag());
    }
    const double span_x = hi_x - lo_x_, span_y = hi_y - lo_y_;
    const double n = static_cast<double>(points_.size());
    cell_ = std::max({std::sqrt(span_x * span_y / n), std::max(span_x, span_y) / 4096.0, 1e-12});
    nx_ = static_cast<long>(span_x / cell_) + 1;
    ny_ = static_cast<long>(span_y / cell_) + 1;
    buckets_.resize(static_cast<std::size_t>(nx_ * ny_));
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const long cx = std::min(nx_ - 1, static_cast<long>((points_[i].real() - lo_x_) / cell_));
        const long cy = std::min(ny_ - 1, static_cast<long>((points_[i].imag() - lo_y_) / cell_));
        buckets_[static_cast<std::size_t>(cy * nx_ + cx)].push_back(i);
    }
}

double NearestPointIndex::distance(cplx z) const
{
    const double fx = std::floor((z.real() - lo_x_) / cell_);
    const double fy = std::floor((z.imag() - lo_y_) / cell_);
    double best = inf;
    if (fx < 0.0 || fy < 0.0 || fx >= static_cast<double>(nx_) || fy >= static_cast<double>(ny_)) {
        for (cplx p : points_) best = std::min(best, std::abs(z - p));
        return best;
    }
    const long cx = static_cast<long>(fx), cy = static_cast<long>(fy);
    auto visit = [&](long i, long j) {
        if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return;
        for (std::size_t idx : buckets_[static_cast<std::size_t>(j * nx_ + i)]) best = std::min(best, std::abs(z - points_[idx]));
    };
    const long rings = std::max(nx_, ny_);
    for (long k = 0; k <= rings; ++k) {
        if (k == 0) {
            visit(cx, cy);
        } else {
            for (long i = cx - k; i <= cx + k; ++i) {
                visit(i, cy - k);
                visit(i, cy + k);
            }
            for (long j = cy - k + 1; j <= cy + k - 1; ++j) {
                visit(cx - k, j);
                visit(cx + k, j);
            }
        }
        if (best <= static_cast<double>(k) * cell_) break;
    }
    return best;
}

double dist_to_set(const PointSet &set, cplx z) { return NearestPointIndex(set).distance(z); }

double dist_to_set(const PerturbedSet &set, cplx z) { return NearestPointIndex(set.zeros()).distance(z); }

// Growth ----------------------------------------------------------------------------------------

double log_max_modulus(const EntireFunction &f, double r, int angles)
{
    angles = std::max(angles, 1024);
    std::vector<double> values(static_cast<std::size_t>(angles));
    const double step = 2.0 * pi / angles;
    parallel_for(values.size(), [&](std::size_t j) { values[j] = f(std::polar(r, step * static_cast<double>(j))).log_mag; });
    const auto top = std::max_element(values.begin(), values.end());
    double best = *top;
    if (best == neg_inf) return neg_inf;
    // Golden-section refinement around the best sample.
    const double centre = step * static_cast<double>(top - values.begin());
    double a = centre - step, b = centre + step;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    auto eval = [&](double t) { return f(std::polar(r, t)).log_mag; };
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = eval(c), fd = eval(d);
    for (int it = 0; it < 60; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = eval(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = eval(d);
        }
    }
    return std::max({best, fc, fd});
}

OrderType order_type_estimate(const EntireFunction &f, std::span<const double> radii)
{
    if (radii.size() < 2) throw std::invalid_argument("order_type_estimate: need at least two radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] >= 2.0)) throw std::invalid_argument("order_type_estimate: radii must be >= 2");
        if (i > 0 && !(radii[i] > radii[i - 1])) throw std::invalid_argument("order_type_estimate: radii must increase");
    }
    OrderType out;
    std::vector<double> x, y;
    for (double r : radii) {
        const double lm = log_max_modulus(f, r);
        out.log_max.push_back(lm);
        x.push_back(std::log(r));
        y.push_back(std::log(std::max(lm, 1e-300)));
    }
    if (std::all_of(out.log_max.begin(), out.log_max.end(), [](double v) { return v == neg_inf; }))
        throw std::invalid_argument("order_type_estimate: function vanishes identically on the circles");
    out.rho = fit_line(x, y).slope;
    out.rho_round = static_cast<int>(std::lround(out.rho));
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t i = radii.size() / 2; i < radii.size(); ++i) {
        sum += out.log_max[i] / std::pow(radii[i], out.rho_round);
        ++count;
    }
    out.tau = sum / static_cast<double>(count);
    return out;
}

} // namespace fockzero
