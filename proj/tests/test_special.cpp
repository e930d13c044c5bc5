// Expected values computed with mpmath at 30 digits: loggamma, zeta(s, a),
// nsum for the shifted row, Gamma(1/4)^8 / (960 pi^2) for the Eisenstein
// sum, and the Jacobi theta representation of sigma for Z + iZ,
//   sigma(z) = (1/pi) exp(pi z^2 / 2) theta_1(pi z, e^{-pi}) / theta_1'(0, e^{-pi}).

#include "fockzero/special.hpp"

#include <doctest.h>

using namespace fockzero;
using namespace fockzero::special;

namespace
{

// Compares complex logarithms modulo 2 pi i.
void check_log(cplx got, cplx want, double tol)
{
    CHECK(got.real() == doctest::Approx(want.real()).epsilon(tol));
    CHECK(std::abs(wrap_angle(got.imag() - want.imag())) < tol * std::max(1.0, std::abs(want)));
}

} // namespace

TEST_CASE("log_gamma against mpmath")
{
    check_log(log_gamma({2.5, 0.0}), {0.284682870472919159632494669683, 0.0}, 1e-13);
    check_log(log_gamma({0.3, 4.0}), {-5.64106353482052872957358482316, 1.23644912154980662503344663513}, 1e-13);
    check_log(log_gamma({-2.7, 0.1}), {-0.142262513881771466049856296461, -9.52557544190639246233294101791}, 1e-12);
    check_log(log_gamma({10.0, -7.0}), {10.4181949686457057882209251001, -16.3117952188240366240856877895}, 1e-13);
}

TEST_CASE("log_sin does not overflow far from the real axis")
{
    check_log(log_sin({0.3, 40.0}), {39.3068528194400546905827678785, 1.27079632679489663033355193789}, 1e-14);
    check_log(log_sin({1.2, -0.5}), {0.0656181445846527653769779655215, -0.177765244948859383269175937846}, 1e-13);
    CHECK(log_sinc(0.0) == cplx(0.0, 0.0));
}

TEST_CASE("Hurwitz zeta and shifted row sums against mpmath")
{
    CHECK(hurwitz_zeta(3.0, 0.5) == doctest::Approx(8.41439832211715999779816713058).epsilon(1e-13));
    CHECK(hurwitz_zeta(2.0, 1.5) == doctest::Approx(0.934802200544679309417245499938).epsilon(1e-13));
    CHECK(hurwitz_zeta(4.0, 0.25) == doctest::Approx(256.463690668198066003798540638).epsilon(1e-13));
    CHECK(shifted_row_sum(2, 0.5) == doctest::Approx(-0.710131866303547127055169666708).epsilon(1e-12));
    CHECK(shifted_row_sum(3, 0.3) == doctest::Approx(-0.602825645833615975723749779346).epsilon(1e-12));
    CHECK(shifted_row_sum(4, 0.0) == 0.0);
}

TEST_CASE("Gaussian Eisenstein sums")
{
    CHECK(gaussian_eisenstein(4) == doctest::Approx(3.15121200215389753821768994225).epsilon(1e-13));
    CHECK(gaussian_eisenstein(5) == 0.0);
    CHECK(gaussian_eisenstein(6) == 0.0);

    // Direct symmetric partial sum over the square |m|, |n| <= 60.
    long double direct = 0.0L;
    for (int m = -60; m <= 60; ++m)
        for (int n = -60; n <= 60; ++n) {
            if (m == 0 && n == 0) continue;
            const std::complex<long double> g(m, n);
            direct += std::real(std::pow(g, -8));
        }
    CHECK(static_cast<double>(direct) == doctest::Approx(gaussian_eisenstein(8)).epsilon(1e-10));
}

TEST_CASE("log_sigma against the theta-function oracle")
{
    CHECK(log_sigma({0.3, 0.2}).real() == doctest::Approx(-1.01073540113564609514388939892).epsilon(1e-13));
    CHECK(log_sigma({2.7, -1.4}).real() == doctest::Approx(13.4846518624175440897544072117).epsilon(1e-13));
    CHECK(log_sigma({0.5, 0.5}).real() == doctest::Approx(-0.178561172234088553927998176756).epsilon(1e-13));
    CHECK(log_sigma({-3.2, 4.1}).real() == doctest::Approx(40.9141889484141823152429713765).epsilon(1e-13));
    const cplx v = std::exp(log_sigma({2.7, -1.4}));
    CHECK(v.real() == doctest::Approx(-585098.769296356127220715393309).epsilon(1e-12));
    CHECK(v.imag() == doctest::Approx(416682.001715836033985789429408).epsilon(1e-12));
}

TEST_CASE("sigma quasi-periodicity: |sigma(z + 1)| = |sigma(z)| e^{pi Re(z) + pi/2}")
{
    // eta_1 = pi/2 for the half-period 1/2 of Z + iZ.
    for (cplx z : {cplx(0.2, 0.7), cplx(-1.3, 2.2), cplx(3.1, -0.4)}) {
        const double lhs = log_sigma(z + 1.0).real();
        const double rhs = log_sigma(z).real() + pi * z.real() + pi / 2.0;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
        const double lhs_i = log_sigma(z + cplx(0.0, 1.0)).real();
        const double rhs_i = log_sigma(z).real() + pi * z.imag() + pi / 2.0;
        CHECK(lhs_i == doctest::Approx(rhs_i).epsilon(1e-12));
    }
}

TEST_CASE("sigma over sine is finite at real integers")
{
    const cplx v = log_sigma_over_sin({3.0, 0.0});
    CHECK(std::isfinite(v.real()));
    const cplx near = log_sigma({3.0 + 1e-7, 0.0}) - log_sin({pi * (3.0 + 1e-7), 0.0});
    CHECK(v.real() == doctest::Approx(near.real()).epsilon(1e-6));
}
