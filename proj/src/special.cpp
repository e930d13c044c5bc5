#include "fockzero/special.hpp"

#include <array>
#include <stdexcept>

namespace fockzero::special
{

namespace
{

constexpr cplx I{0.0, 1.0};

// Bernoulli numbers B_2, B_4, ..., B_16.
constexpr std::array<double, 8> bernoulli{1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0,
                                          5.0 / 66.0, -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0};

// Euler-Maclaurin remainder sum_{m>=0} f(x0 + m) for f(x) = (x + c)^{-s} - [diff] x^{-s},
// given the integral of f on [x0, inf).
double euler_maclaurin_power(double s, double x0, double integral, double c, bool diff)
{
    auto term = [&](double x) { return std::pow(x + c, -s) - (diff ? std::pow(x, -s) : 0.0); };
    double total = integral + 0.5 * term(x0);
    // f^{(2j-1)}(x) = -(s)_{2j-1} (x + c)^{-s-2j+1}
    double rising = s; // (s)_{1}
    double factorial = 2.0;
    for (std::size_t j = 1; j <= bernoulli.size(); ++j) {
        const double order = static_cast<double>(2 * j - 1);
        auto deriv = [&](double x) { return -rising * std::pow(x, -s - order); };
        const double d = deriv(x0 + c) - (diff ? deriv(x0) : 0.0);
        total -= bernoulli[j - 1] / factorial * d;
        rising *= (s + order) * (s + order + 1.0);
        factorial *= static_cast<double>((2 * j + 1) * (2 * j + 2));
    }
    return total;
}

constexpr int eisenstein_terms = 48; // E_4 .. E_192

// Computed in extended precision: the product tail corrections subtract
// large partial sums from these values.
const std::array<long double, eisenstein_terms + 1> &eisenstein_table_ld()
{
    static const std::array<long double, eisenstein_terms + 1> table = [] {
        // Weierstrass p expansion coefficients c_k = (2k - 1) G_{2k}; c_3 = 0 (g3 = 0).
        constexpr int kmax = 2 * eisenstein_terms;
        constexpr long double pi_ld = std::numbers::pi_v<long double>;
        std::array<long double, kmax + 1> c{};
        const long double g4 = std::pow(std::tgamma(0.25L), 8) / (960.0L * pi_ld * pi_ld);
        c[2] = 3.0L * g4;
        c[3] = 0.0L;
        for (int k = 4; k <= kmax; ++k) {
            long double acc = 0.0L;
            for (int m = 2; m <= k - 2; ++m) acc += c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(k - m)];
            c[static_cast<std::size_t>(k)] = 3.0L / ((2.0L * k + 1.0L) * (k - 3.0L)) * acc;
        }
        std::array<long double, eisenstein_terms + 1> out{};
        for (int j = 1; j <= eisenstein_terms; ++j)
            out[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(2 * j)] / (4.0L * j - 1.0L);
        return out;
    }();
    return table;
}

const std::array<double, eisenstein_terms + 1> &eisenstein_table()
{
    static const std::array<double, eisenstein_terms + 1> table = [] {
        std::array<double, eisenstein_terms + 1> out{};
        for (std::size_t j = 0; j < out.size(); ++j) out[j] = static_cast<double>(eisenstein_table_ld()[j]);
        return out;
    }();
    return table;
}

// -sum_{k>=3} G_k z^k / k = log(sigma(z) / z), valid for |z| < 1.
cplx sigma_series(cplx z)
{
    const auto &e = eisenstein_table();
    const cplx z4 = z * z * z * z;
    cplx power = z4;
    cplx acc = 0.0;
    for (int j = 1; j <= eisenstein_terms; ++j) {
        const cplx term = e[static_cast<std::size_t>(j)] * power / (4.0 * j);
        acc -= term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) break;
        power *= z4;
    }
    return acc;
}

struct CellReduction
{
    cplx z0;
    double a;
    double b;
};

CellReduction reduce(cplx z)
{
    const double a = std::round(z.real());
    const double b = std::round(z.imag());
    return {z - cplx{a, b}, a, b};
}

// log sigma(z0 + a + ib) - log sigma(z0) from sigma(z + 1) = -e^{pi (z + 1/2)} sigma(z)
// and sigma(z + i) = -e^{-i pi (z + i/2)} sigma(z).
cplx quasi_period_shift(cplx z0, double a, double b)
{
    const cplx shift_a = a * pi * z0 + pi * a * a / 2.0 + I * pi * a;
    const cplx w1 = z0 + a;
    const cplx shift_b = -I * pi * b * w1 + pi * b * b / 2.0 + I * pi * b;
    return shift_a + shift_b;
}

} // namespace

cplx log_sinc(cplx x)
{
    if (std::abs(x) > 1e-3) return std::log(std::sin(x) / x);
    const cplx x2 = x * x;
    return std::log(1.0 - x2 / 6.0 + x2 * x2 / 120.0);
}

cplx log_sin(cplx w)
{
    const double y = w.imag();
    if (y > 1.0) return -I * w + std::log(I / 2.0) + std::log(1.0 - std::exp(2.0 * I * w));
    if (y < -1.0) return I * w + std::log(-I / 2.0) + std::log(1.0 - std::exp(-2.0 * I * w));
    const cplx s = std::sin(w);
    if (s == 0.0) return {neg_inf, 0.0};
    return std::log(s);
}

cplx log_gamma(cplx w)
{
    if (w.real() < 0.5) {
        // Gamma(w) Gamma(1 - w) = pi / sin(pi w)
        return std::log(pi) - log_sin(pi * w) - log_gamma(1.0 - w);
    }
    static constexpr double g = 7.0;
    static constexpr std::array<double, 9> coeff{0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                                 771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                                 -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    const cplx v = w - 1.0;
    cplx x = coeff[0];
    for (std::size_t i = 1; i < coeff.size(); ++i) x += coeff[i] / (v + static_cast<double>(i));
    const cplx t = v + g + 0.5;
    return 0.5 * std::log(2.0 * pi) + (v + 0.5) * std::log(t) - t + std::log(x);
}

double hurwitz_zeta(double s, double a)
{
    if (!(s > 1.0) || !(a > 0.0)) throw std::invalid_argument("hurwitz_zeta: need s > 1 and a > 0");
    constexpr int direct = 64;
    ExactSum acc;
    for (int m = 0; m < direct; ++m) acc += std::pow(a + m, -s);
    const double x0 = a + direct;
    const double integral = std::pow(x0, 1.0 - s) / (s - 1.0);
    if (s > 40.0) return acc.value() + integral;
    acc += euler_maclaurin_power(s, x0, integral, 0.0, false);
    return acc.value();
}

double shifted_row_sum(int k, double nu) { return shifted_row_tail(k, nu, 1); }

double shifted_row_tail(int k, double nu, long m0)
{
    if (k < 1 || nu < 0.0 || m0 < 1) throw std::invalid_argument("shifted_row_tail: need k >= 1, nu >= 0, m0 >= 1");
    if (nu == 0.0) return 0.0;
    constexpr int direct = 64;
    ExactSum acc;
    for (long m = m0; m < m0 + direct; ++m) {
        const double x = static_cast<double>(m);
        acc += std::pow(x + nu, -k) - std::pow(x, -k);
    }
    const double x0 = static_cast<double>(m0 + direct);
    const double integral =
        k == 1 ? std::log(x0 / (x0 + nu)) : (std::pow(x0 + nu, 1.0 - k) - std::pow(x0, 1.0 - k)) / (k - 1.0);
    acc += euler_maclaurin_power(static_cast<double>(k), x0, integral, nu, true);
    return acc.value();
}

double gaussian_eisenstein(int k)
{
    if (k < 3) throw std::invalid_argument("gaussian_eisenstein: k must be >= 3");
    if (k % 4 != 0) return 0.0;
    const int j = k / 4;
    if (j > eisenstein_terms) return 4.0; // the four unit points dominate to double precision
    return eisenstein_table()[static_cast<std::size_t>(j)];
}

long double gaussian_eisenstein_ld(int k)
{
    if (k < 3) throw std::invalid_argument("gaussian_eisenstein: k must be >= 3");
    if (k % 4 != 0) return 0.0L;
    const int j = k / 4;
    if (j > eisenstein_terms) return 4.0L;
    return eisenstein_table_ld()[static_cast<std::size_t>(j)];
}

cplx log_sigma(cplx z)
{
    const auto [z0, a, b] = reduce(z);
    if (z0 == 0.0) return {neg_inf, 0.0};
    return std::log(z0) + sigma_series(z0) + quasi_period_shift(z0, a, b);
}

cplx log_sigma_over_sin(cplx z)
{
    const auto [z0, a, b] = reduce(z);
    if (b != 0.0) return log_sigma(z) - log_sin(pi * z);
    // sin(pi (z0 + a)) = (-1)^a sin(pi z0); sigma(z0) / sin(pi z0) is regular at z0 = 0.
    return sigma_series(z0) - std::log(pi) - log_sinc(pi * z0) + quasi_period_shift(z0, a, 0.0) - I * pi * a;
}

} // namespace fockzero::special
