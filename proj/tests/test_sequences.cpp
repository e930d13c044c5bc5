#include "fockzero/sequences.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace fockzero;

TEST_CASE("PointSet canonical order merges duplicates and signed zeros")
{
    const auto set = PointSet::from_values({{2.0, 0.0}, {-0.0, 1.0}, {0.0, 1.0}, {1.0, 0.0}, {-1.0, -0.0}});
    REQUIRE(set.size() == 4);
    CHECK(set.points()[0].z == cplx(1.0, 0.0));
    CHECK(set.points()[1].z == cplx(0.0, 1.0));
    CHECK(set.points()[1].multiplicity == 2);
    CHECK(set.points()[2].z == cplx(-1.0, 0.0));
    CHECK(std::signbit(set.points()[2].z.imag()) == false);
    CHECK(set.total_multiplicity() == 5);
    CHECK_THROWS_AS(PointSet::from_values({{inf, 0.0}}), std::invalid_argument);
}

TEST_CASE("lattice points and indices")
{
    CHECK(LatticeIndex{2, 0, 0.5}.point() == cplx(2.5, 0.0));
    CHECK(LatticeIndex{-2, 0, 0.5}.point() == cplx(-2.0, 0.0));
    CHECK(LatticeIndex{2, 3, 0.5}.point() == cplx(2.0, 3.0));
    CHECK(LatticeIndex{2, 3, 0.5}.node() == cplx(2.0, 3.0));
    for (cplx g : {cplx(0.5, 0.0), cplx(-3.0, 0.0), cplx(4.0, -2.0)}) CHECK(lattice_index(g, 0.5).point() == g);
}

TEST_CASE("generators: counts against the area and shell oracles")
{
    // Gauss circle problem: n(R) = pi R^2 + O(R^{2/3}).
    const auto lattice = gen_gamma_nu(0.5, 50.0);
    CHECK(std::abs(static_cast<double>(lattice.size()) - pi * 2500.0) < 4.0 * 50.0);
    CHECK(lattice.family() == Family::gamma_nu);

    // Shells |z|^2 = 2n with 2n <= 100: four points each.
    CHECK(gen_zeros_of_s(10.0).size() == 200);
    CHECK(gen_als(10.0).size() == 202);
    CHECK(gen_integers(7).size() == 7);
    CHECK(gen_powers(0.5, 4).points().back().z == cplx(2.0, 0.0));
    CHECK_THROWS_AS(gen_gamma_nu(1.5, 10.0), std::invalid_argument);
}

TEST_CASE("perturbations move points by exp(delta + i theta)")
{
    const auto base = gen_integers(3);
    const auto set = perturb(base, InverseSquarePerturbation{0.5}, ZeroPerturbation{});
    REQUIRE(set.size() == 3);
    CHECK(set.entries()[1].lambda.real() == doctest::Approx(2.0 * std::exp(0.125)));
    CHECK(set.sup_gamma2_delta() == doctest::Approx(0.5));
    CHECK(!set.unperturbed());
    CHECK(unperturbed(base).unperturbed());

    TablePerturbation table;
    table.values = {{{1.0, 0.0}, 0.0}, {{2.0, 0.0}, 0.0}, {{3.0, 0.0}, 0.0}};
    const auto rotated = perturb(base, ZeroPerturbation{}, table);
    CHECK(rotated.unperturbed());
    table.values.erase({3.0, 0.0});
    CHECK_THROWS_AS(perturb(base, table, ZeroPerturbation{}), std::invalid_argument);
    CHECK_THROWS_AS(perturb(base, ShellSchedulePerturbation{0.1}, ZeroPerturbation{}), std::invalid_argument);
}

TEST_CASE("separation and collisions")
{
    CHECK(separation(gen_gamma_nu(0.0, 20.0)) == doctest::Approx(1.0));
    // Row shift 0.5 leaves the row spacing 1 and the gap -1 .. 0.5.
    CHECK(separation(gen_gamma_nu(0.5, 20.0)) == doctest::Approx(1.0));

    TablePerturbation table;
    table.values = {{{1.0, 0.0}, std::log(2.0)}, {{2.0, 0.0}, 0.0}, {{3.0, 0.0}, 0.0}};
    const auto collided = perturb(gen_integers(3), table, ZeroPerturbation{});
    CHECK(collided.collisions() > 0);
    CHECK(separation(collided) == 0.0);

    // The closest weighted pair of the cross sequence is 1 and sqrt(2).
    CHECK(als_separation_constant(unperturbed(gen_als(30.0))) == doctest::Approx(std::sqrt(2.0) - 1.0));
}

TEST_CASE("separation of a collinear set uses the sweep")
{
    CHECK(separation(gen_powers(0.5, 100)) == doctest::Approx(10.0 - std::sqrt(99.0)));
}

TEST_CASE("counting and power sums against exact series")
{
    const auto ints = gen_integers(100);
    const double radii[] = {1.0, 10.5, 100.0};
    const auto counts = counting_function(ints, radii);
    CHECK(counts.values == std::vector<double>{1.0, 10.0, 100.0});
    // sum_{n<=10} n^{-2}
    CHECK(power_sum(ints, 2.0, 10.0) == doctest::Approx(1.5497677311665408).epsilon(1e-15));
    CHECK(convergence_exponent(gen_integers(1000)).value == doctest::Approx(1.0).epsilon(0.01));
    CHECK(convergence_exponent(gen_gamma_nu(0.0, 60.0)).value == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("Lindelof sums vanish exactly on iz-symmetric sets")
{
    const auto zeros = gen_zeros_of_s(40.0);
    CHECK(lindelof_sum(zeros, 2, 40.0) == cplx(0.0, 0.0));
    CHECK(lindelof_sum(gen_gamma_nu(0.0, 30.0), 2, 30.0) == cplx(0.0, 0.0));
    // Reals of the zeros of s: sum 2 / (2n) = H(n_max).
    const auto reals = filter(zeros, [](cplx z) { return z.imag() == 0.0; });
    double harmonic = 0.0;
    for (int n = 800; n >= 1; --n) harmonic += 1.0 / n;
    CHECK(lindelof_sum(reals, 2, 40.0).real() == doctest::Approx(harmonic).epsilon(1e-13));
}

TEST_CASE("delta statistics of c / |gamma|^2 approach 2 pi c")
{
    const double c = 0.1;
    const auto set = perturb(gen_gamma_nu(0.5, 300.0), InverseSquarePerturbation{c}, ZeroPerturbation{});
    const auto stats = delta_stats(set, log_grid(3.0, 300.0, 32));
    CHECK(stats.delta_proxy == doctest::Approx(2.0 * pi * c).epsilon(0.05));
    CHECK(stats.delta_hat_proxy == doctest::Approx(2.0 * pi * c).epsilon(0.05));
    CHECK(stats.delta_hat_proxy <= stats.delta_proxy);
    CHECK_THROWS_AS(delta_stats(set, log_grid(3.0, 30.0, 8)), std::invalid_argument);
}

TEST_CASE("shell statistics: harmonic and alternating schedules")
{
    const double radius = std::sqrt(2.0e4);
    const auto harmonic = perturb(gen_als(radius), ShellSchedulePerturbation{0.2}, ZeroPerturbation{});
    const auto h = shell_delta_stats(harmonic, 1);
    CHECK(h.shell_sums.size() == 10000);
    CHECK(h.delta_proxy == doctest::Approx(0.2).epsilon(0.05));
    // ((n+1)/1) * 0.2/(n+1)
    CHECK(h.avdonin_sup == doctest::Approx(0.2).epsilon(1e-9));

    const auto alternating = perturb(gen_als(radius),
                                     ShellSchedulePerturbation{0.2, ShellSchedulePerturbation::Pattern::alternating},
                                     ZeroPerturbation{});
    CHECK(shell_delta_stats(alternating, 1).delta_proxy < 0.05);
    CHECK(shell_delta_stats(unperturbed(gen_als(radius))).delta_proxy == 0.0);
}

TEST_CASE("sectors")
{
    for (int k = 0; k < 8; ++k) CHECK(sector_index(std::polar(2.0, k * pi / 4.0)) == k);
    CHECK(sector_index({-1.0, 0.0}) == 4);
    const auto parts = sector_partition(gen_zeros_of_s(10.0));
    CHECK(parts[0].size() == 50);
    CHECK(parts[1].size() == 0);
    CHECK(in_sector({1.0, 0.01}, 0.0, 0.02));
    CHECK(in_sector({-1.0, -0.01}, 0.0, 0.02));
    CHECK(!in_sector({0.0, 1.0}, 0.0, 0.5));
    CHECK(in_sector({1.0, 0.0}, 0.0, 0.0));
    const auto turned = rotate(gen_integers(3), pi / 2.0);
    CHECK(std::abs(turned.points()[0].z - cplx(0.0, 1.0)) < 1e-15);
}
