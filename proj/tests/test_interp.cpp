#include "cubasquare/interp.hpp"
#include "cubasquare/univariate.hpp"

#include <doctest.h>

#include <cmath>

using namespace cubasquare;

namespace
{

std::vector<Point> test_grid(int m = 30)
{
    std::vector<Point> g;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            g.push_back({-1.0 + 2.0 * i / (m - 1), -1.0 + 2.0 * j / (m - 1)});
    return g;
}

double max_error(const Interpolant& L, const std::function<double(Point)>& f)
{
    double e = 0.0;
    for (const Point p : test_grid())
        e = std::max(e, std::abs(L(p) - f(p)));
    return e;
}

FamilySetup cheb1_setup(int n)
{
    return family_setup(n % 2 ? NodeFamily::NearMinTOdd : NodeFamily::MinTEven, n);
}

} // namespace

TEST_CASE("kernel interpolants reproduce constants and low-degree polynomials")
{
    for (int n = 2; n <= 10; ++n)
    {
        CAPTURE(n);
        const auto one = make_interpolant(cheb1_setup(n), [](Point) { return 1.0; });
        CHECK(max_error(*one, [](Point) { return 1.0; }) < 1e-9);
        const auto f = [](Point p) { return p.x * p.x * p.x * p.y * p.y; };
        if (n >= 6)
        {
            const auto L = make_interpolant(cheb1_setup(n), f);
            CHECK(max_error(*L, f) < 1e-9);
        }
    }
    for (auto [a, b] : {std::pair{0.5, 0.5}, {0.5, -0.5}})
        for (int n = 3; n <= 8; ++n)
        {
            const auto setup = family_setup(n % 2 ? NodeFamily::GenChebOdd : NodeFamily::GenChebEven, n, a, b);
            const auto f = [](Point p) { return 1.0 + p.x - 2.0 * p.y * p.y + p.x * p.y; };
            CHECK(max_error(*make_interpolant(setup, f), f) < 1e-9);
        }
}

TEST_CASE("cardinal property and interpolation at the nodes")
{
    for (const auto f : {NodeFamily::GaussU, NodeFamily::MinTEven, NodeFamily::NearMinTOdd, NodeFamily::Padua,
                         NodeFamily::GenChebEven, NodeFamily::GenChebOdd})
    {
        CAPTURE(to_string(f));
        const int n = f == NodeFamily::MinTEven || f == NodeFamily::GenChebEven ? 8 : 7;
        const auto setup = family_setup(f, n, 0.5, 0.5);
        const auto fn = [](Point p) { return std::exp(p.x) * std::cos(2 * p.y); };
        const auto L = make_interpolant(setup, fn);
        const Eigen::MatrixXd C = L->cardinal_matrix(setup.nodes.points);
        CHECK((C - Eigen::MatrixXd::Identity(C.rows(), C.cols())).cwiseAbs().maxCoeff() < 1e-9);
        for (const Point z : setup.nodes.points)
            CHECK(std::abs((*L)(z) - fn(z)) <= 1e-9 * (1.0 + std::abs(fn(z))));
        // partition of unity
        std::vector<double> l(setup.nodes.size());
        L->cardinal({0.123, -0.456}, l);
        double s = 0.0;
        for (double v : l)
            s += v;
        CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("Padua interpolation")
{
    const auto t32 = [](Point p) { return chebyshev_t(3, p.x) * chebyshev_t(2, p.y); };
    for (int n = 5; n <= 12; ++n)
    {
        std::vector<double> v;
        for (const Point p : padua_points(n).points)
            v.push_back(t32(p));
        const auto L = interpolate_padua(n, v);
        double e = 0.0;
        for (const Point p : test_grid())
            e = std::max(e, std::abs((*L)(p) - t32(p)));
        CHECK(e < 1e-9);
    }

    const auto fn = [](Point p) { return 1.0 / (1.0 + p.x * p.x + 2 * p.y * p.y); };
    std::vector<double> v;
    const auto nodes = padua_points(11);
    for (const Point p : nodes.points)
        v.push_back(fn(p));
    const auto L = interpolate_padua(11, v);
    CHECK(L->coefficients().size() == 78);
    for (const Point p : nodes.points)
        CHECK(std::abs((*L)(p) - fn(p)) <= 1e-10);
    CHECK(L->condition_number() < 1e6);

    // integral of the interpolant of 1 against the Chebyshev-1 weight
    const auto one = interpolate_padua(11, std::vector<double>(78, 1.0));
    const auto rule = oracle_rule(WeightSpec::cheb1(), 22);
    CHECK(rule.integrate([&](Point p) { return (*one)(p); }) == doctest::Approx(pi * pi).epsilon(1e-12));

    CHECK_THROWS(interpolate_padua(4, std::vector<double>(3, 0.0)));
}

TEST_CASE("Lebesgue constants")
{
    const double l2 = lebesgue_constant(NodeFamily::MinTEven, 2, 64);
    CHECK(l2 >= 1.0);
    CHECK(l2 < 5.0);
    // nested grids: a finer grid never lowers the estimate
    const auto setup = cheb1_setup(6);
    const auto L = make_interpolant(setup, [](Point) { return 0.0; });
    CHECK(lebesgue_constant(*L, 128) >= lebesgue_constant(*L, 64) - 1e-12);
    CHECK(chebyshev_grid(4).size() == 25);
}

TEST_CASE("convergence")
{
    const auto e = [](Point p) { return std::exp(p.x + p.y); };
    const auto rows = convergence_report(NodeFamily::MinTEven, e, {4, 8, 16});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].ratio == 0.0);
    CHECK(rows[1].error < rows[0].error);
    CHECK(rows[2].error < 1e-8);

    const auto l2 = convergence_report(NodeFamily::MinTEven, e, {6, 8, 10}, ErrorNorm::L2);
    CHECK(l2[1].ratio < 0.5);
    CHECK(l2[2].ratio < 0.5);

    const auto p4 = [](Point p) { return std::pow(p.x, 4) - p.x * p.y * p.y + 0.5; };
    for (const auto& r : convergence_report(NodeFamily::MinTEven, p4, {6, 8}))
        CHECK(r.error <= 1e-9);
    for (const auto& r : convergence_report(NodeFamily::NearMinTOdd, p4, {5, 7}))
        CHECK(r.error <= 1e-9);
    CHECK_THROWS_AS(convergence_report(NodeFamily::MinTEven, p4, {7}), UnsupportedError);

    // regression values for |x|: slow, roughly first-order decay
    const auto abs_rows = convergence_report(NodeFamily::MinTEven, [](Point p) { return std::abs(p.x); }, {4, 8, 16});
    CHECK(abs_rows[0].error == doctest::Approx(0.184474).epsilon(1e-4));
    CHECK(abs_rows[1].error == doctest::Approx(0.0832008).epsilon(1e-4));
    CHECK(abs_rows[2].error == doctest::Approx(0.039383).epsilon(1e-4));
}
