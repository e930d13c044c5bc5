#include "fockzero/verify.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace fockzero;

namespace
{

const Condition &get(const TheoremReport &r, const std::string &name)
{
    const auto *c = r.find(name);
    REQUIRE(c != nullptr);
    return *c;
}

// Every record names its producing operation and carries a config.
void check_audit(const TheoremReport &r)
{
    for (const auto &c : r.conditions) {
        CHECK(!c.op.empty());
        CHECK(!c.config.is_null());
        CHECK(c.threshold.contains("op"));
    }
}

} // namespace

TEST_CASE("admissible exponent window of the lattice theorem")
{
    CHECK(lattice_p_admissible(0.5, 2.0));
    CHECK(!lattice_p_admissible(0.5, 4.0));
    CHECK(!lattice_p_admissible(0.5, 1.2));
    CHECK(lattice_p_admissible(0.0, 1e6));
    CHECK(!lattice_p_admissible(0.0, 2.0));
    CHECK(lattice_p_admissible(1.0, 1.5));
}

TEST_CASE("theorem 1: zero perturbation passes, 2 pi c = 0.6 fails, collisions fail")
{
    const auto base = gen_gamma_nu(0.5, 500.0);
    const auto zero = check_theorem1(unperturbed(base), 0.5, 2.0);
    CHECK(zero.verdict);
    CHECK(get(zero, "delta proxy").value == 0.0);
    check_audit(zero);

    const auto moved = perturb(base, InverseSquarePerturbation{0.6 / (2.0 * pi)}, ZeroPerturbation{});
    const auto far = check_theorem1(moved, 0.5, 2.0);
    CHECK(!far.verdict);
    CHECK(!get(far, "delta proxy").pass);
    CHECK(get(far, "separation").pass);

    TablePerturbation table;
    for (const auto &pt : base.points()) table.values[{pt.z.real(), pt.z.imag()}] = 0.0;
    table.values[{1.5, 0.0}] = std::log(2.5 / 1.5);
    const auto collided = check_theorem1(perturb(base, table, ZeroPerturbation{}), 0.5, 2.0);
    CHECK(!collided.verdict);
    CHECK(!get(collided, "separation").pass);

    const auto outside = check_theorem1(unperturbed(base), 0.5, 5.0);
    CHECK(!outside.verdict);
    CHECK(!get(outside, "p admissible").pass);

    CHECK_THROWS_AS(check_theorem1(unperturbed(base), 0.0, 3.0), std::invalid_argument);
}

TEST_CASE("theorem 2: the shell schedule threshold")
{
    const double radius = std::sqrt(2.0e3);
    const auto zero = check_theorem2(unperturbed(gen_als(radius)), 3.0);
    CHECK(zero.verdict);
    CHECK(get(zero, "Delta proxy").value == 0.0);
    check_audit(zero);

    const auto base = gen_als(radius);
    const auto low = check_theorem2(perturb(base, ShellSchedulePerturbation{0.2}, ZeroPerturbation{}), 2.0);
    CHECK(low.verdict);
    const auto high = check_theorem2(perturb(base, ShellSchedulePerturbation{0.3}, ZeroPerturbation{}), 2.0);
    CHECK(!high.verdict);
    CHECK(get(high, "Delta proxy").value == doctest::Approx(0.3).epsilon(0.05));
    CHECK_THROWS_AS(check_theorem2(unperturbed(base), 1.0), std::invalid_argument);
}

TEST_CASE("theorem 3: inverse-square sums")
{
    const auto ints = check_theorem3(gen_integers(10000));
    CHECK(ints.verdict);
    CHECK(get(ints, "inverse-square sum").value == doctest::Approx(pi * pi / 6.0).epsilon(1e-6));
    check_audit(ints);

    CHECK(check_theorem3(gen_powers(0.6, 100000)).verdict);
    CHECK(!check_theorem3(gen_zeros_of_s(300.0)).verdict);
    CHECK_THROWS_AS(check_theorem3(gen_integers(50)), std::invalid_argument);
}

TEST_CASE("Lindelof conditions and the sector inequality")
{
    const auto zeros = gen_zeros_of_s(300.0);
    const auto full = lindelof_check(zeros, 2);
    CHECK(full.verdict);
    CHECK(get(full, "max |S(r)|").value == 0.0);
    CHECK(get(full, "n(R)/R^rho").value == doctest::Approx(2.0).epsilon(0.05));
    check_audit(full);

    const auto reals = filter(zeros, [](cplx z) { return z.imag() == 0.0; });
    const auto cut = lindelof_check(reals, 2);
    CHECK(!cut.verdict);
    // sum over 2n <= r^2 of 2 / (2n) ~ 2 log r
    CHECK(get(cut, "|S(r)| slope against log r").value == doctest::Approx(2.0).epsilon(0.05));

    CHECK(sector_lemma_demo(reals, 0.0, 0.0).verdict);
    const double theta = pi / 4.0 - 0.01;
    const auto turned = rotate(filter(reals, [](cplx z) { return z.real() > 0.0; }), theta);
    CHECK(sector_lemma_demo(turned, 0.0, theta).verdict);
    CHECK_THROWS_AS(sector_lemma_demo(zeros, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(sector_lemma_demo(reals, 0.0, pi / 4.0), std::invalid_argument);
}

TEST_CASE("cross-sequence envelope: unperturbed ratio is constant")
{
    const auto set = unperturbed(gen_als(32.0));
    const auto g = als_function(set);
    const auto fit = envelope_verify_als(g, set.zeros(), polar_grid(7.0, 24, 32));
    CHECK(fit.pass);
    CHECK(fit.ratio_max / fit.ratio_min == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.measured_min == doctest::Approx(2.0).epsilon(1e-6));
    CHECK_THROWS_AS(envelope_verify_als(g, set.zeros(), polar_grid(7.0, 4, 8)), std::invalid_argument);
    CHECK_THROWS_AS(envelope_verify_als(g, set.zeros(), polar_grid(20.0, 24, 32)), std::domain_error);
}

TEST_CASE("lattice envelope at nu = 0 has a flat diagonal ray")
{
    const auto set = unperturbed(gen_gamma_nu(0.0, 32.0));
    const auto g = lattice_function(set, 32.0);
    EnvelopeConfig cfg;
    cfg.ray_min = 2.0;
    cfg.ray_max = 7.5;
    cfg.ray_samples = 100;
    const auto fit = envelope_verify_lattice(g, set.zeros(), 0.0, polar_grid(7.5, 24, 32), cfg);
    CHECK(fit.pass);
    CHECK(fit.diagonal_slope == doctest::Approx(0.0).epsilon(0.2));
    const auto report = envelope_report(fit, true, cfg);
    CHECK(report.verdict);
    check_audit(report);
}

TEST_CASE("zero-excess demo")
{
    const auto set = unperturbed(gen_als(64.0));
    const auto g = als_function(set);
    const auto report = zero_excess_demo(g, Family::als, 0.0, 1.0, 2.0);
    CHECK(get(report, "G/(z-lambda) in F^p").pass);
    CHECK(report.verdict);

    const auto lattice = lattice_function(unperturbed(gen_gamma_nu(0.5, 64.0)), 64.0);
    const auto outside = zero_excess_demo(lattice, Family::gamma_nu, 0.5, 0.5, 5.0);
    CHECK(!outside.verdict);
    CHECK(!get(outside, "p admissible").pass);
    CHECK(outside.find("G/(z-lambda) in F^p") == nullptr);
    CHECK_THROWS_AS(zero_excess_demo(lattice, Family::gamma_nu, 0.5, {0.3, 0.3}, 2.0), std::invalid_argument);
}
