#include "cubasquare/types.hpp"
#include "cubasquare/univariate.hpp"

#include <doctest.h>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

#include <cmath>
#include <random>

using namespace cubasquare;

namespace
{

// Explicit Gegenbauer sum at 50 digits:
// C_n^l(x) = sum_k (-1)^k Gamma(n-k+l) / (Gamma(l) k! (n-2k)!) (2x)^(n-2k).
double gegenbauer_series(double lambda, int n, double x)
{
    using big = boost::multiprecision::cpp_dec_float_50;
    const big l(lambda);
    big sum = 0;
    for (int k = 0; 2 * k <= n; ++k)
    {
        big term = boost::math::tgamma(big(n - k) + l) / boost::math::tgamma(l);
        term /= boost::math::factorial<big>(static_cast<unsigned>(k));
        term /= boost::math::factorial<big>(static_cast<unsigned>(n - 2 * k));
        term *= pow(big(2) * big(x), n - 2 * k);
        sum += (k % 2 ? -term : term);
    }
    return static_cast<double>(sum);
}

} // namespace

TEST_CASE("Chebyshev polynomials")
{
    CHECK(chebyshev_t(0, 0.3) == 1.0);
    CHECK(chebyshev_t(2, 0.5) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(chebyshev_t(-1, 0.7) == 0.0);
    CHECK(chebyshev_u(1, 0.25) == doctest::Approx(0.5));
    CHECK(chebyshev_u(0, -0.9) == 1.0);
    CHECK(std::abs(chebyshev_u(3, std::cos(pi / 4))) < 1e-14);
    CHECK(chebyshev_u(-1, 0.2) == 0.0);

    // T_n(cos t) = cos(n t), U_n(cos t) = sin((n+1)t)/sin t
    for (int n = 0; n <= 30; ++n)
        for (double t : {0.1, 0.7, 1.3, 2.9})
        {
            CHECK(chebyshev_t(n, std::cos(t)) == doctest::Approx(std::cos(n * t)).epsilon(1e-12));
            CHECK(chebyshev_u(n, std::cos(t)) == doctest::Approx(std::sin((n + 1) * t) / std::sin(t)).epsilon(1e-11));
        }
}

TEST_CASE("Gegenbauer polynomials")
{
    CHECK(std::abs(gegenbauer(1.0, 2, 0.5)) < 1e-15);
    CHECK(gegenbauer(0.5, 1, 0.4) == doctest::Approx(0.4));
    CHECK(gegenbauer(1.5, 3, 0.2) == doctest::Approx(gegenbauer_series(1.5, 3, 0.2)).epsilon(1e-14));
    for (double l : {0.25, 0.5, 1.0, 2.5})
        for (int n : {0, 1, 4, 9})
            for (double x : {-0.8, 0.1, 0.6})
                CHECK(gegenbauer(l, n, x) == doctest::Approx(gegenbauer_series(l, n, x)).epsilon(1e-12));
    CHECK_THROWS_AS(gegenbauer(0.0, 2, 0.1), UnsupportedError);
    // C_n^1 = U_n
    for (int n = 0; n < 10; ++n)
        CHECK(gegenbauer(1.0, n, 0.37) == doctest::Approx(chebyshev_u(n, 0.37)));
}

TEST_CASE("normalized Jacobi polynomials")
{
    CHECK(jacobi_normalized(0.3, -0.2, 0, 0.9) == 1.0);
    CHECK(jacobi_normalized(-0.5, -0.5, 0, -0.4) == 1.0);
    CHECK(std::abs(jacobi_normalized(0.5, 0.5, 1, 0.0)) < 1e-15);
    for (int n = 1; n <= 12; ++n)
        for (double t : {0.2, 1.1, 2.5})
            CHECK(jacobi_normalized(-0.5, -0.5, n, std::cos(t)) ==
                  doctest::Approx(std::sqrt(2.0) * std::cos(n * t)).epsilon(1e-12));

    SUBCASE("orthonormality under the Gauss rule")
    {
        for (auto [a, b] : {std::pair{-0.5, -0.5}, {0.5, 0.5}, {0.5, -0.5}, {0.0, 0.0}})
        {
            const auto g = gauss_rule_1d(a, b, 12);
            const double mass = jacobi_mass(a, b);
            for (int i = 0; i <= 10; ++i)
                for (int j = 0; j <= 10; ++j)
                {
                    double s = 0.0;
                    for (std::size_t q = 0; q < g.points.size(); ++q)
                        s += g.weights[q] * jacobi_normalized(a, b, i, g.points[q]) *
                             jacobi_normalized(a, b, j, g.points[q]);
                    CHECK(std::abs(s / mass - (i == j ? 1.0 : 0.0)) < 1e-10);
                }
        }
    }

    SUBCASE("all-degrees and derivative agree with single evaluation")
    {
        std::vector<double> all(9);
        jacobi_normalized_all(1.5, 0.5, 0.3, all);
        for (int n = 0; n < 9; ++n)
        {
            CHECK(all[static_cast<std::size_t>(n)] == doctest::Approx(jacobi_normalized(1.5, 0.5, n, 0.3)));
            const double h = 1e-6;
            const double fd = (jacobi_normalized(1.5, 0.5, n, 0.3 + h) - jacobi_normalized(1.5, 0.5, n, 0.3 - h)) / (2 * h);
            CHECK(jacobi_normalized_with_derivative(1.5, 0.5, n, 0.3).second == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("Jacobi angle grids and zeros")
{
    auto g = jacobi_angle_grid(-0.5, -0.5, 2);
    REQUIRE(g.thetas.size() == 3);
    CHECK(g.thetas[0] == 0.0);
    CHECK(g.thetas[1] == doctest::Approx(pi / 4));
    CHECK(g.thetas[2] == doctest::Approx(3 * pi / 4));

    g = jacobi_angle_grid(0.5, 0.5, 1);
    REQUIRE(g.thetas.size() == 2);
    CHECK(g.thetas[1] == doctest::Approx(pi / 2));

    g = jacobi_angle_grid(0.0, 0.0, 2);
    REQUIRE(g.thetas.size() == 3);
    CHECK(g.thetas[1] == doctest::Approx(std::acos(1 / std::sqrt(3.0))));
    CHECK(g.thetas[2] == doctest::Approx(std::acos(-1 / std::sqrt(3.0))));

    // property: angles strictly increasing in (0, pi), zeros are roots
    for (auto [a, b] : {std::pair{0.5, -0.5}, {1.5, 0.5}, {-0.3, 0.7}})
        for (int m = 1; m <= 20; ++m)
        {
            const auto z = jacobi_zeros(a, b, m);
            const auto grid = jacobi_angle_grid(a, b, m);
            REQUIRE(static_cast<int>(grid.thetas.size()) == m + 1);
            for (int k = 1; k <= m; ++k)
            {
                CHECK(grid.thetas[static_cast<std::size_t>(k)] > grid.thetas[static_cast<std::size_t>(k - 1)]);
                CHECK(grid.thetas[static_cast<std::size_t>(k)] < pi);
            }
            for (const double x : z)
                CHECK(std::abs(jacobi_normalized(a, b, m, x)) < 1e-9 * std::sqrt(m + 1.0));
        }
    CHECK_THROWS_AS(jacobi_angle_grid(-1.0, 0.0, 2), UnsupportedError);
}

TEST_CASE("Gauss-Jacobi rules")
{
    auto g = gauss_rule_1d(0.0, 0.0, 1);
    CHECK(std::abs(g.points[0]) < 1e-15);
    CHECK(g.weights[0] == doctest::Approx(2.0));

    for (int m : {1, 3, 7, 16})
    {
        g = gauss_rule_1d(-0.5, -0.5, m);
        for (double w : g.weights)
            CHECK(w == doctest::Approx(pi / m).epsilon(1e-13));
        for (int k = 0; k < 2 * m; ++k)
        {
            double s = 0.0;
            for (std::size_t q = 0; q < g.points.size(); ++q)
                s += g.weights[q] * chebyshev_t(k, g.points[q]);
            CHECK(std::abs(s - (k == 0 ? pi : 0.0)) < 1e-12);
        }
    }

    g = gauss_rule_1d(0.0, 0.0, 5);
    double s = 0.0;
    for (std::size_t q = 0; q < g.points.size(); ++q)
        s += g.weights[q] * std::pow(g.points[q], 8);
    CHECK(std::abs(s - 2.0 / 9.0) < 1e-14);

    // property: exact for x^k (1-x)^a (1+x)^b moments via Beta functions
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-0.9, 2.0);
    for (int trial = 0; trial < 10; ++trial)
    {
        const double a = u(rng), b = u(rng);
        const auto rule = gauss_rule_1d(a, b, 6);
        double total = 0.0;
        for (double w : rule.weights)
            total += w;
        CHECK(total == doctest::Approx(jacobi_mass(a, b)).epsilon(1e-12));
        const double expect =
            std::pow(2.0, a + b + 1) * std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 2);
        CHECK(jacobi_mass(a, b) == doctest::Approx(expect).epsilon(1e-13));
    }
}
