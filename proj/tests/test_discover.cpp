#include "cubasquare/discover.hpp"

#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>

using namespace cubasquare;

namespace
{

// (2k)! / (2^k k!^2) evaluated exactly as a rational and rounded once.
double gamma_reference(int k)
{
    using boost::multiprecision::cpp_int;
    cpp_int num = 1, den = 1;
    for (int j = 1; j <= 2 * k; ++j)
        num *= j;
    for (int j = 1; j <= k; ++j)
        den *= 2 * j * j;
    const cpp_int g = boost::multiprecision::gcd(num, den);
    num /= g;
    den /= g;
    return static_cast<double>(num) / static_cast<double>(den) * std::sqrt(2.0 * k + 1.0);
}

double max_abs(const Eigen::VectorXd& v)
{
    return v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
}

} // namespace

TEST_CASE("Legendre building blocks")
{
    for (int k = 0; k <= 20; ++k)
        CHECK(gamma_k(k) == doctest::Approx(gamma_reference(k)).epsilon(1e-14));
    CHECK(legendre_a(0) == doctest::Approx(1.0 / std::sqrt(3.0)));
    const auto [A1, A2] = legendre_A_matrices(3);
    CHECK(A1.rows() == 4);
    CHECK(A1.cols() == 5);
    CHECK(A1(0, 0) == doctest::Approx(legendre_a(3)));
    CHECK(A2(0, 1) == doctest::Approx(legendre_a(0)));
    const auto g = scaling_diagonal(4);
    CHECK(g(1) == doctest::Approx(gamma_k(3) * gamma_k(1)));
}

TEST_CASE("parameterization defects vanish for arbitrary Hankel matrices")
{
    for (int n = 2; n <= 6; ++n)
    {
        std::vector<double> he(2 * static_cast<std::size_t>(n)), ho(2 * static_cast<std::size_t>(n) + 1);
        for (std::size_t i = 0; i < ho.size(); ++i)
            ho[i] = std::sin(1.0 + 0.7 * static_cast<double>(i)) * 1e-3;
        std::copy_n(ho.begin(), he.size(), he.begin());
        CHECK(even_parameterization_defect(make_hankel(SystemKind::Even, n, he)) < 1e-10);
        CHECK(odd_parameterization_defect(make_hankel(SystemKind::Odd, n, ho)) < 1e-10);
    }
    CHECK_THROWS(make_hankel(SystemKind::Odd, 3, {1.0, 2.0}));
}

TEST_CASE("H = 0 residuals")
{
    // H = 0: Gamma = 0 leaves the constant part of the even residual; W = I leaves A1^t A2 - A2^t A1.
    for (int n = 2; n <= 5; ++n)
    {
        const auto even = even_system_residual(n, make_hankel(SystemKind::Even, n, std::vector<double>(2 * n, 0.0)));
        const auto odd = odd_system_residual(n, make_hankel(SystemKind::Odd, n, std::vector<double>(2 * n + 1, 0.0)));
        CHECK(max_abs(even) > 1e-3);
        CHECK(max_abs(odd) > 1e-3);
    }
}

TEST_CASE("fixtures")
{
    const auto e3 = fixture_even_h3();
    CHECK(max_abs(even_system_residual(3, e3.printed)) <= 1e-10);

    const auto o3 = fixture_odd_h3();
    CHECK(max_abs(odd_system_residual(3, o3.printed)) > 1e-3);
    CHECK(max_abs(odd_system_residual(3, o3.corrected)) <= 1e-10);

    const auto o4 = fixture_odd_h4();
    CHECK(max_abs(odd_system_residual(4, o4.printed)) <= 1e-10);

    const auto o5 = fixture_odd_h5();
    CHECK(max_abs(odd_system_residual(5, o5.printed)) > 1e-4);
    CHECK(max_abs(odd_system_residual(5, o5.corrected)) <= 1e-10);

    // the corrections touch only the identified entries
    int differing = 0;
    for (std::size_t i = 0; i < o5.printed.h.size(); ++i)
        differing += std::abs(o5.printed.h[i] - o5.corrected.h[i]) > 1e-15;
    CHECK(differing == 2);
    CHECK(fixture_for(SystemKind::Odd, 5).has_value());
    CHECK_FALSE(fixture_for(SystemKind::Even, 6).has_value());
}

TEST_CASE("symmetry images")
{
    const auto h = fixture_odd_h5().corrected;
    const auto orbit = symmetry_orbit(h);
    CHECK(orbit.size() >= 2);
    for (const auto& img : orbit)
        CHECK(max_abs(odd_system_residual(5, make_hankel(SystemKind::Odd, 5, img))) <= 1e-10);
    HankelParam flipped = make_hankel(SystemKind::Odd, 5, orbit.back());
    CHECK(symmetry_distance(flipped, h) < 1e-15);
}

TEST_CASE("fixture pipelines")
{
    SUBCASE("odd n = 5: 17 real common zeros and a degree-9 rule")
    {
        const auto d = rule_from_hankel(fixture_odd_h5().corrected);
        CHECK(d.rule.nodes.size() == 17);
        CHECK(d.rule.degree == 9);
        CHECK(d.report.pass);

        // the displayed degree-5 polynomials vanish on the nodes only after the sqrt(430) correction
        const auto sys_c = orthogonal_polys_from_U(5, fixture_q5_corrected().transpose());
        const auto sys_p = orthogonal_polys_from_U(5, fixture_q5_printed().transpose());
        double worst_c = 0.0, worst_p = 0.0;
        for (const Point z : d.rule.nodes.points)
        {
            worst_c = std::max(worst_c, max_abs(sys_c.evaluate(z)));
            worst_p = std::max(worst_p, max_abs(sys_p.evaluate(z)));
        }
        CHECK(worst_c < 1e-10);
        CHECK(worst_p > 1e-4);
    }
    SUBCASE("odd n = 4: twelve nodes inside the square")
    {
        const auto d = rule_from_hankel(fixture_odd_h4().printed);
        CHECK(d.rule.nodes.size() == 12);
        CHECK(d.outside == 0);
        CHECK(d.report.pass);
        CHECK(d.local_dimension == 2);
    }
    SUBCASE("even n = 3: Gaussian rule of degree 4 on 6 nodes")
    {
        const auto d = rule_from_hankel(fixture_even_h3().printed);
        CHECK(d.rule.nodes.size() == 6);
        CHECK(d.rule.degree == 4);
        CHECK(d.report.pass);
    }
    CHECK_THROWS_AS(rule_from_hankel(fixture_odd_h3().printed), NumericalError);
}

TEST_CASE("solvers on small systems")
{
    SolverOptions opts;
    opts.seeds = 30;
    SUBCASE("odd n = 3 with the axis-symmetric ansatz")
    {
        opts.axis_symmetric = true;
        const auto r = odd_system_solve(3, opts);
        REQUIRE(r.solutions.size() == 1);
        CHECK(symmetry_distance(r.solutions[0].H, fixture_odd_h3().corrected) < 1e-8);
        CHECK(r.solutions[0].V.cols() == 1);
    }
    SUBCASE("even n = 3 finds solutions of a continuum")
    {
        const auto sols = solve_even_system(3, opts);
        REQUIRE_FALSE(sols.empty());
        for (const auto& H : sols)
            CHECK(max_abs(even_system_residual(3, H)) <= 1e-9);
        CHECK(solution_set_dimension(sols.front()) == 3);
    }
    SUBCASE("determinism")
    {
        const auto a = solve_even_system(4, opts);
        const auto b = solve_even_system(4, opts);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a[i].h == b[i].h);
    }
}

TEST_CASE("common zeros count mismatch is reported")
{
    const auto sys = even_system_polynomials(fixture_even_h3().printed);
    CHECK(common_zeros(sys, 6).size() == 6);
    try
    {
        common_zeros(sys, 7);
        FAIL("expected CommonZerosError");
    }
    catch (const CommonZerosError& e)
    {
        CHECK(e.found().size() == 6);
    }
}
