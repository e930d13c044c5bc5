#include "fockzero/numeric.hpp"

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>

using namespace fockzero;

TEST_CASE("wrap_angle maps into (-pi, pi]")
{
    CHECK(wrap_angle(pi) == doctest::Approx(pi));
    CHECK(wrap_angle(-pi) == doctest::Approx(pi));
    CHECK(wrap_angle(3.0 * pi / 2.0) == doctest::Approx(-pi / 2.0));
    CHECK(wrap_angle(0.25) == 0.25);
}

TEST_CASE("log_add and log_sum_exp stay finite for huge exponents")
{
    CHECK(log_add(1000.0, 1000.0) == doctest::Approx(1000.0 + std::log(2.0)));
    CHECK(log_add(neg_inf, 3.0) == 3.0);
    CHECK(log_add(neg_inf, neg_inf) == neg_inf);
    const std::vector<double> logs{800.0, 800.0, neg_inf};
    const std::vector<double> weights{1.0, 3.0, 5.0};
    CHECK(log_sum_exp(logs, weights) == doctest::Approx(800.0 + std::log(4.0)));
}

TEST_CASE("ExactSum is exact and order independent")
{
    ExactSum a, b;
    const double xs[] = {1e16, 1.0, -1e16, 1e-3, 3.0, -1e-3};
    for (double x : xs) a += x;
    for (int i = 5; i >= 0; --i) b += xs[i];
    CHECK(a.value() == 4.0);
    CHECK(b.value() == 4.0);

    ExactComplexSum c;
    c.add({0.1, 0.2});
    c.add({-0.1, -0.2});
    CHECK(c.value() == cplx(0.0, 0.0));
}

TEST_CASE("fit_line recovers an exact line")
{
    const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> y{1.0, 3.0, 5.0, 7.0};
    const auto f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    CHECK(f.residual == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("least_squares solves an overdetermined system")
{
    Eigen::MatrixXd a(4, 2);
    a << 1, 0, 1, 1, 1, 2, 1, 3;
    Eigen::VectorXd b(4);
    b << -1, 1, 3, 5;
    const auto c = least_squares(a, b);
    CHECK(c(0) == doctest::Approx(-1.0));
    CHECK(c(1) == doctest::Approx(2.0));
}

TEST_CASE("log_grid endpoints and ratios")
{
    const auto g = log_grid(2.0, 200.0, 3);
    REQUIRE(g.size() == 3);
    CHECK(g[0] == 2.0);
    CHECK(g[1] == doctest::Approx(20.0));
    CHECK(g[2] == 200.0);
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly")
{
    const auto &gl = gauss_legendre(16);
    double s0 = 0.0, s30 = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        s0 += gl.weights[i];
        s30 += gl.weights[i] * std::pow(gl.nodes[i], 30);
    }
    CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(s30 == doctest::Approx(2.0 / 31.0).epsilon(1e-13));
}

TEST_CASE("parallel_for visits every index once and rethrows")
{
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                        if (i == 7) throw std::domain_error("boom");
                    }),
                    std::domain_error);
    CHECK(thread_count() >= 1);
}
