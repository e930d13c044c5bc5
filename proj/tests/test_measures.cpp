// Golden values: ||1||_p = 1, ||z^k||_2^2 = k!/pi^k and ||K_w||_2 = e^{pi |w|^2 / 2}
// for the Fock norm with d mu_{p pi} = (p/2) e^{-p pi |z|^2 / 2} dA.

#include "fockzero/measures.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace fockzero;

TEST_CASE("Gaussian measure has unit mass")
{
    CHECK(gaussian_mass({pi}, 8.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gaussian_mass({2.0}, 10.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(gaussian_mass({-1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("annulus integral of a radial Gaussian")
{
    // integral over 1 <= |z| <= 2 of e^{-|z|^2} dA = pi (e^{-1} - e^{-4})
    auto f = [](cplx z) { return -std::norm(z); };
    const double v = std::exp(log_annulus_integral(f, 1.0, 2.0, {}));
    CHECK(v == doctest::Approx(pi * (std::exp(-1.0) - std::exp(-4.0))).epsilon(1e-12));
    CHECK_THROWS_AS(log_annulus_integral(f, 2.0, 1.0, {}), std::invalid_argument);
}

TEST_CASE("ladder radii")
{
    const auto r = ladder_radii({4.0, 16.0});
    REQUIRE(r.size() == 5);
    CHECK(r[1] == doctest::Approx(4.0 * std::sqrt(2.0)));
    CHECK(r.back() == doctest::Approx(16.0));
}

TEST_CASE("Fock norm golden values")
{
    for (double p : {1.0, 2.0, 3.0}) {
        const auto est = fock_p_norm(constant_function(1.0), p);
        CHECK(est.verdict == Verdict::converged);
        REQUIRE(est.value);
        CHECK(*est.value == doctest::Approx(1.0).epsilon(1e-10));
    }
    double factorial = 1.0;
    for (int k = 1; k <= 10; ++k) {
        factorial *= k;
        const auto est = fock_p_norm(monomial(k), 2.0);
        REQUIRE(est.value);
        const double sq = *est.value * *est.value;
        CHECK(sq == doctest::Approx(factorial / std::pow(pi, k)).epsilon(1e-8));
    }
    for (cplx w : {cplx(0.5, 0.0), cplx(1.0, 1.0), cplx(0.0, 2.0)}) {
        const auto est = fock_p_norm(closed_form(ClosedForm::kernel, w), 2.0);
        REQUIRE(est.value);
        CHECK(*est.value == doctest::Approx(std::exp(pi * std::norm(w) / 2.0)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(fock_p_norm(constant_function(1.0), 0.5), std::invalid_argument);
}

TEST_CASE("ladder verdicts for power-law integrands")
{
    // e^{L} = (1 + |z|^2)^{-a}: increments over [R_{k-1}, R_k] scale as R^{2 - 2a}.
    QuadratureSpec spec;
    LadderSpec ladder{4.0, 64.0, 0.05, false};
    auto decaying = [](cplx z) { return -2.0 * std::log1p(std::norm(z)); };
    const auto c = integrate_ladder(decaying, ladder, spec);
    CHECK(c.verdict == Verdict::converged);
    CHECK(c.exponent == doctest::Approx(-2.0).epsilon(0.05));
    REQUIRE(c.value);
    // integral of (1 + r^2)^{-2} over the plane is pi
    CHECK(*c.value == doctest::Approx(pi).epsilon(1e-3));

    auto growing = [](cplx z) { return -0.5 * std::log1p(std::norm(z)); };
    const auto d = integrate_ladder(growing, ladder, spec);
    CHECK(d.verdict == Verdict::diverging);
    CHECK(d.exponent == doctest::Approx(1.0).epsilon(0.05));
    CHECK(!d.value);
}

TEST_CASE("quadrature disk must lie inside the evaluation disk")
{
    const auto g = lattice_function(unperturbed(gen_gamma_nu(0.0, 32.0)), 32.0);
    CHECK_THROWS_AS(fock_p_norm(g, 2.0, {4.0, 16.0}), std::domain_error);
}

TEST_CASE("weighted measure density")
{
    const NuMeasure m{2.0, 1.0, 0.5};
    CHECK(m.q() == doctest::Approx(2.0));
    const cplx z{1.0, 1.0};
    // |z|^2 = 2, |Im z^2| = 2, |z| = sqrt 2
    const double want = -2.0 * 0.5 * std::log1p(std::sqrt(2.0)) - pi * 2.0;
    CHECK(m.log_density(z) == doctest::Approx(want));
    CHECK(verdict_from_string(to_string(Verdict::inconclusive)) == Verdict::inconclusive);
}
