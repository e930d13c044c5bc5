#include "fockzero/products.hpp"

#include "fockzero/special.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace fockzero;

namespace
{

double arg_gap(double a, double b) { return std::abs(wrap_angle(a - b)); }

} // namespace

TEST_CASE("LogComplex arithmetic and the zero sentinel")
{
    const auto a = LogComplex::from_value({0.0, 2.0});
    const auto b = LogComplex::from_value({-3.0, 0.0});
    const auto p = a * b;
    CHECK(std::abs(p.value() - cplx(0.0, -6.0)) < 1e-14);
    CHECK(std::abs((a / b).value() - cplx(0.0, -2.0 / 3.0)) < 1e-15);
    CHECK((a * LogComplex::zero()).is_zero());
    CHECK_THROWS_AS(a / LogComplex::zero(), std::domain_error);
    const auto big = LogComplex::from_log({2000.0, 0.5});
    CHECK((big / big).log_mag == 0.0);
}

TEST_CASE("closed forms at known points")
{
    // s(0) = pi / 2 by l'Hopital.
    CHECK(eval_closed(ClosedForm::s, 0.0).value().real() == doctest::Approx(pi / 2.0));
    CHECK(eval_closed(ClosedForm::S, 1.0).is_zero());
    CHECK(eval_closed(ClosedForm::s, std::sqrt(2.0)).is_zero());
    CHECK(eval_closed(ClosedForm::s, {0.0, 2.0}).is_zero());
    // |S(i)| = (2 / pi) |sin(-pi/2)| = 2 / pi
    CHECK(std::exp(eval_closed(ClosedForm::S, {0.0, 1.0}).log_mag) == doctest::Approx(2.0 / pi));
    const cplx z{0.7, -1.3};
    const cplx direct = (z * z - 1.0) * std::sin(pi * z * z / 2.0) / (pi * z * z);
    CHECK(std::abs(eval_closed(ClosedForm::G_Gamma, z).value() - direct) < 1e-13 * std::abs(direct));
    const cplx w{0.5, 0.25};
    CHECK(eval_closed(ClosedForm::kernel, z, w).log_mag == doctest::Approx((pi * std::conj(w) * z).real()));
    CHECK(closed_form_from_string(to_string(ClosedForm::G_Gamma)) == ClosedForm::G_Gamma);
    CHECK_THROWS_AS(closed_form_from_string("nope"), std::invalid_argument);
}

TEST_CASE("lattice closed form at nu = 0 is sigma")
{
    // Jacobi theta oracle values (see test_special).
    CHECK(lattice_closed_form(0.0, {0.3, 0.2}).log_mag == doctest::Approx(-1.01073540113564609514388939892).epsilon(1e-13));
    CHECK(lattice_closed_form(0.0, {-3.2, 4.1}).log_mag == doctest::Approx(40.9141889484141823152429713765).epsilon(1e-13));
}

TEST_CASE("lattice product: direct truncation agrees with the closed form within the bound")
{
    for (double nu : {0.0, 0.5, 1.0}) {
        const auto set = unperturbed(gen_gamma_nu(nu, 32.0));
        const LatticeProductEvaluator ev(set, 32.0);
        const double r = ev.domain_radius();
        const double bound = ev.tail_bound(r);
        CHECK(bound < 1e-3);
        for (cplx z : {cplx(0.3, 0.4), cplx(-2.2, 1.7), cplx(5.1, -5.3), cplx(-7.9, 0.3)}) {
            const auto closed = ev(z);
            const auto direct = ev.direct(z);
            CHECK(std::abs(closed.log_mag - direct.log_mag) <= bound);
            CHECK(arg_gap(closed.arg, direct.arg) <= bound + 1e-12);
        }
        CHECK(ev({nu, 0.0}).is_zero());
    }
}

TEST_CASE("weighted sigma modulus is periodic")
{
    const auto set = unperturbed(gen_gamma_nu(0.0, 64.0));
    const auto g = lattice_function(set, 64.0);
    for (cplx z : {cplx(0.31, 0.47), cplx(-2.4, 1.9), cplx(3.3, -2.6)}) {
        const double w = weighted_log_mag(g, z);
        CHECK(weighted_log_mag(g, z + 1.0) == doctest::Approx(w).epsilon(1e-9));
        CHECK(weighted_log_mag(g, z + cplx(0.0, 1.0)) == doctest::Approx(w).epsilon(1e-9));
    }
}

TEST_CASE("genus factors use the square-lattice nodes, not the perturbed points")
{
    // With node factors the perturbation changes the product by
    // prod (1 - z/lambda) / (1 - z/gamma) exactly, except at the point whose
    // node is 0, which carries the factor (z - lambda); with lambda in the
    // exponential factors an extra exp(z/lambda - z/gamma + ...) appears.
    const double c = 0.3;
    const auto base = gen_gamma_nu(0.5, 32.0);
    const auto moved = perturb(base, InverseSquarePerturbation{c}, ZeroPerturbation{});
    const LatticeProductEvaluator plain(unperturbed(base), 32.0);
    const LatticeProductEvaluator pert(moved, 32.0);
    const cplx z{3.1, 2.3};
    std::complex<long double> ratio_log = 0.0L, lambda_factor_log = 0.0L;
    for (const auto &e : moved.entries()) {
        if (e.lambda == e.base) continue;
        const std::complex<long double> zz(z), g(e.base), l(e.lambda);
        if (lattice_index(e.base, 0.5).node() == 0.0) {
            ratio_log += std::log((zz - l) / (zz - g));
            continue;
        }
        ratio_log += std::log((1.0L - zz / l) / (1.0L - zz / g));
        lambda_factor_log += zz / l - zz / g + zz * zz / (2.0L * l * l) - zz * zz / (2.0L * g * g);
    }
    const double measured = pert(z).log_mag - plain(z).log_mag;
    CHECK(measured == doctest::Approx(static_cast<double>(ratio_log.real())).epsilon(1e-9));
    CHECK(std::abs(static_cast<double>(lambda_factor_log.real())) > 1e-3);
    CHECK(std::abs(measured - static_cast<double>((ratio_log + lambda_factor_log).real())) > 1e-3);
    CHECK(pert.direct(z).log_mag == doctest::Approx(pert(z).log_mag).epsilon(1e-6));
}

TEST_CASE("lattice evaluator preconditions")
{
    CHECK_THROWS_AS(LatticeProductEvaluator(unperturbed(gen_als(40.0)), 32.0), std::invalid_argument);
    CHECK_THROWS_AS(LatticeProductEvaluator(unperturbed(gen_gamma_nu(0.5, 20.0)), 32.0), std::invalid_argument);
    const auto g = lattice_function(unperturbed(gen_gamma_nu(0.5, 32.0)), 32.0);
    CHECK(g.domain_radius == doctest::Approx(8.0));
    CHECK_THROWS_AS(g(cplx(9.0, 0.0)), std::domain_error);
}

TEST_CASE("cross-sequence product equals -2 G_Gamma")
{
    const auto set = unperturbed(gen_als(64.0));
    const ALSProductEvaluator ev(set);
    CHECK(ev.n_max() == 2048);
    CHECK(ev.domain_radius() == doctest::Approx(32.0));
    for (cplx z : {cplx(0.2, 0.1), cplx(2.3, -1.1), cplx(-4.4, 4.0), cplx(0.0, 5.5), cplx(11.0, 3.0)}) {
        const auto closed = eval_closed(ClosedForm::G_Gamma, z);
        const auto prod = ev(z);
        CHECK(prod.log_mag == doctest::Approx(closed.log_mag + std::log(2.0)).epsilon(1e-12));
        CHECK(arg_gap(prod.arg, closed.arg + pi) < 1e-10);
    }
    CHECK(ev(1.0).is_zero());
    CHECK(ev({0.0, 2.0}).is_zero());
}

TEST_CASE("division by a linear factor at a zero")
{
    // (S / (z - 1))(1) = S'(1) = 2 / pi
    const auto f = divided_by_linear(closed_form(ClosedForm::S), 1.0);
    CHECK(std::exp(f(1.0).log_mag) == doctest::Approx(2.0 / pi).epsilon(1e-10));
    const cplx near{1.0 + 2e-4, 1e-4};
    const cplx direct = eval_closed(ClosedForm::S, near).value() / (near - 1.0);
    CHECK(std::abs(f(near).value() - direct) < 1e-9);
    const auto g = times_monomial(monomial(2), 1);
    CHECK(g({2.0, 0.0}).log_mag == doctest::Approx(3.0 * std::log(2.0)));
}

TEST_CASE("nearest-point queries match brute force")
{
    const auto set = gen_gamma_nu(0.5, 10.0);
    const NearestPointIndex index(set);
    for (cplx z : {cplx(0.1, 0.1), cplx(3.7, -2.2), cplx(25.0, 1.0), cplx(-9.9, 9.9)}) {
        double best = inf;
        for (const auto &p : set.points()) best = std::min(best, std::abs(z - p.z));
        CHECK(index.distance(z) == doctest::Approx(best));
    }
}

TEST_CASE("maximum modulus and order/type")
{
    CHECK(log_max_modulus(monomial(3), 2.0) == doctest::Approx(3.0 * std::log(2.0)));
    // M(r, e^{pi conj(w) z}) = e^{pi |w| r}
    CHECK(log_max_modulus(closed_form(ClosedForm::kernel, {0.0, 1.0}), 3.0) == doctest::Approx(3.0 * pi).epsilon(1e-10));
    const double radii[] = {6.0, 7.0, 8.0, 9.0, 10.0, 11.0, 12.0};
    const auto ot = order_type_estimate(closed_form(ClosedForm::G_Gamma), radii);
    CHECK(ot.rho == doctest::Approx(2.0).epsilon(0.025));
    CHECK(ot.rho_round == 2);
    CHECK(ot.tau == doctest::Approx(pi / 2.0).epsilon(0.05));
}
