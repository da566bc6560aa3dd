#include "cubasquare/basis2d.hpp"
#include "cubasquare/cubature.hpp"
#include "cubasquare/nodes.hpp"
#include "cubasquare/univariate.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cubasquare;

namespace
{

// Gram matrix of all members of degree <= n under the oracle, for the probability measure.
Eigen::MatrixXd gram_upto(const OrthoBasis2D& b, int n)
{
    const auto rule = oracle_rule(b.weight(), 2 * n);
    const auto dim = static_cast<Eigen::Index>(dim_polynomials(n));
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(dim, dim);
    for (std::size_t q = 0; q < rule.points.size(); ++q)
    {
        const auto v = b.values_upto(n, rule.points[q]);
        const Eigen::Map<const Eigen::VectorXd> e(v.data(), dim);
        G += (rule.weights[q] / b.mass()) * e * e.transpose();
    }
    return G;
}

std::vector<Point> random_points(int count, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-0.99, 0.99);
    std::vector<Point> pts;
    for (int i = 0; i < count; ++i)
        pts.push_back({u(rng), u(rng)});
    return pts;
}

} // namespace

TEST_CASE("orthonormality of the closed-form and Gram-Schmidt bases")
{
    for (const char* text : {"const", "cheb1", "cheb2", "gegenbauer:1.5", "jacobi:0.5:-0.5"})
    {
        CAPTURE(std::string(text));
        const auto w = WeightSpec::parse(text);
        const auto b = product_basis(w);
        const Eigen::MatrixXd G = gram_upto(*b, 6);
        CHECK((G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() < 1e-10);
    }
    const auto w = WeightSpec::parse("gencheb:0.5:-0.5:0.5");
    GramSchmidtBasis gs(w, 6);
    const Eigen::MatrixXd G = gram_upto(gs, 6);
    CHECK((G - Eigen::MatrixXd::Identity(G.rows(), G.cols())).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS(gs.degree_values(7, {0.1, 0.2}));
}

TEST_CASE("fixed members")
{
    const auto b = product_basis(WeightSpec::constant());
    const auto v = b->degree_values(1, {0.3, -0.4});
    // {sqrt3 x, sqrt3 y} in the order P_{1-k}(x) P_k(y)
    CHECK(v[0] == doctest::Approx(std::sqrt(3.0) * 0.3));
    CHECK(v[1] == doctest::Approx(std::sqrt(3.0) * -0.4));
    const auto c = product_basis(WeightSpec::cheb1());
    CHECK(c->degree_values(0, {0.8, -0.1})[0] == doctest::Approx(1.0));
    CHECK(c->degree_values(0, {-0.2, 0.5})[0] == doctest::Approx(1.0));
}

TEST_CASE("degree-n basis vanishes at the Gaussian nodes of the second kind")
{
    for (int n = 2; n <= 8; ++n)
    {
        const auto nodes = gauss_u_nodes(n);
        const auto vanishing = vanishing_polynomials(NodeFamily::GaussU, n);
        for (const auto& p : vanishing)
            for (const Point z : nodes.points)
                CHECK(std::abs(p(z)) < 1e-10);
    }
}

TEST_CASE("kernels")
{
    const auto w = WeightSpec::constant();
    const auto b = product_basis(w);
    CHECK(kernel_K(*b, 0, {0.1, 0.2}, {-0.7, 0.4}) == doctest::Approx(1.0 / 4.0));
    const auto pts = random_points(6, 3);
    for (const Point a : pts)
        for (const Point c : pts)
            CHECK(kernel_K(*b, 5, a, c) == doctest::Approx(kernel_K(*b, 5, c, a)));

    // reproducing: integral of K_5(z, .) p W = p(z) for p = x^2 y
    const auto rule = oracle_rule(w, 12);
    for (const Point z : pts)
    {
        const double v = rule.integrate([&](Point t) { return kernel_K(*b, 5, z, t) * t.x * t.x * t.y; });
        CHECK(std::abs(v - z.x * z.x * z.y) < 1e-10);
    }

    // the kernel does not depend on the chosen orthonormal basis
    const auto cheb2 = WeightSpec::cheb2();
    const auto pb = product_basis(cheb2);
    GramSchmidtBasis gs(cheb2, 5);
    for (const Point z : pts)
        CHECK(kernel_K(*pb, 5, z, {0.3, 0.1}) == doctest::Approx(kernel_K(gs, 5, z, {0.3, 0.1})).epsilon(1e-9));
}

TEST_CASE("three-term relation")
{
    SUBCASE("Legendre coefficients")
    {
        for (int n = 0; n <= 6; ++n)
        {
            const auto t = three_term(WeightSpec::constant(), n);
            CHECK(t.A1(0, 0) == doctest::Approx((n + 1.0) / std::sqrt((2.0 * n + 1) * (2.0 * n + 3))));
            CHECK(t.A1(n, n) == doctest::Approx(1.0 / std::sqrt(3.0)));
            for (Eigen::Index r = 0; r < t.A1.rows(); ++r)
                CHECK((t.A1.row(r).array() != 0.0).count() == 1);
        }
    }
    SUBCASE("closed form matches oracle projections, B = 0 for centrally symmetric weights")
    {
        for (const char* text : {"const", "cheb1", "gegenbauer:1.5"})
        {
            const auto w = WeightSpec::parse(text);
            const auto b = product_basis(w);
            for (int n = 0; n <= 5; ++n)
            {
                const auto closed = three_term(w, n);
                const auto proj = three_term_projected(*b, n);
                CHECK((closed.A1 - proj.A1).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((closed.A2 - proj.A2).cwiseAbs().maxCoeff() < 1e-12);
                CHECK(proj.B1.cwiseAbs().maxCoeff() < 1e-12);
                CHECK(proj.B2.cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
    SUBCASE("direct substitution at random points")
    {
        const auto b = product_basis(WeightSpec::constant());
        for (int n = 1; n <= 6; ++n)
        {
            const auto t = three_term(WeightSpec::constant(), n);
            const auto tm = three_term(WeightSpec::constant(), n - 1);
            for (const Point z : random_points(5, 11u + static_cast<unsigned>(n)))
            {
                const auto pn = b->degree_values(n, z), pp = b->degree_values(n + 1, z), pm = b->degree_values(n - 1, z);
                const Eigen::Map<const Eigen::VectorXd> Pn(pn.data(), n + 1), Pp(pp.data(), n + 2), Pm(pm.data(), n);
                CHECK((z.x * Pn - t.A1 * Pp - tm.A1.transpose() * Pm).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((z.y * Pn - t.A2 * Pp - tm.A2.transpose() * Pm).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("kernel split")
{
    const auto w = WeightSpec::cheb1();
    const auto b = product_basis(w);
    const auto g = KernelStarSpec::gaussian(4, RuleConfiguration::GaussianEven);
    for (const Point z : random_points(4, 5))
        CHECK(kernel_K_star(g, *b, z, {0.2, -0.6}) == doctest::Approx(kernel_K(*b, 3, z, {0.2, -0.6})));

    const int n = 6;
    auto spec = KernelStarSpec::from_vanishing(*b, n, RuleConfiguration::Minimal,
                                               vanishing_polynomials(NodeFamily::MinTEven, n));
    CHECK(spec.sigma == n / 2);
    const auto nodes = min_t_nodes_even(n);
    const auto from_nodes = KernelStarSpec::from_nodes(*b, n, RuleConfiguration::Minimal, nodes.points);
    // both describe the same complement subspace
    const Eigen::MatrixXd P1 = spec.q_coefficients.transpose() * spec.q_coefficients;
    const Eigen::MatrixXd P2 = from_nodes.q_coefficients.transpose() * from_nodes.q_coefficients;
    CHECK((P1 - P2).cwiseAbs().maxCoeff() < 1e-9);

    const double off = spec.calibrate(*b, nodes.points);
    CHECK(off < 1e-10);
    for (const Point z : nodes.points)
        CHECK(kernel_K_star(spec, *b, z, z) > 0.0);
    const auto pts = random_points(3, 9);
    CHECK(kernel_K_star(spec, *b, pts[0], pts[1]) == doctest::Approx(kernel_K_star(spec, *b, pts[1], pts[0])));

    CHECK_THROWS_AS(KernelStarSpec::gaussian(4, RuleConfiguration::Minimal), NumericalError);
    // calibration on nodes that carry no rule for this split fails loudly or leaves large off-diagonals
    auto wrong = spec;
    std::vector<Point> shifted = nodes.points;
    for (auto& p : shifted)
        p.x *= 0.9;
    bool rejected = false;
    try
    {
        rejected = wrong.calibrate(*b, shifted) > 1e-6;
    }
    catch (const NumericalError&)
    {
        rejected = true;
    }
    CHECK(rejected);
}
