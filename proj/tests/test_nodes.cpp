#include "cubasquare/nodes.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace cubasquare;

namespace
{

// Equal sizes and every point of a has a partner in b (points are pairwise separated).
bool same_set(const std::vector<Point>& a, const std::vector<Point>& b, double tol = 1e-12)
{
    if (a.size() != b.size())
        return false;
    return std::all_of(a.begin(), a.end(), [&](Point p) {
        return std::any_of(b.begin(), b.end(), [&](Point q) { return max_norm_distance(p, q) <= tol; });
    });
}

NodeSet chebyshev1_nodes(int n)
{
    return n % 2 == 0 ? min_t_nodes_even(n) : near_min_t_nodes_odd(n);
}

std::vector<Point> swapped(const std::vector<Point>& pts)
{
    std::vector<Point> out;
    for (const Point p : pts)
        out.push_back({p.y, p.x});
    return out;
}

bool inside(const NodeSet& s)
{
    return std::all_of(s.points.begin(), s.points.end(),
                       [](Point p) { return std::abs(p.x) <= 1.0 + 1e-15 && std::abs(p.y) <= 1.0 + 1e-15; });
}

double min_separation(const NodeSet& s)
{
    double m = 1e300;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            m = std::min(m, max_norm_distance(s.points[i], s.points[j]));
    return m;
}

} // namespace

TEST_CASE("cardinalities from the figure captions")
{
    CHECK(min_t_nodes_even(18).size() == 180);
    CHECK(near_min_t_nodes_odd(17).size() == 162);
    CHECK(padua_points(11).size() == 78);
    CHECK(gencheb_nodes(0.5, 0.5, 16).size() == 144);
}

TEST_CASE("counts, vanishing, containment and separation across degrees")
{
    CHECK(moeller_count(4) == 12);
    CHECK(moeller_count(5) == 17);
    for (int n = 1; n <= 16; ++n)
    {
        CAPTURE(n);
        const auto g = gauss_u_nodes(n);
        CHECK(static_cast<long>(g.size()) == n * (n + 1) / 2);
        CHECK(vanishing_residual(g) < 1e-10);
        CHECK(inside(g));

        const auto p = padua_points(n);
        CHECK(static_cast<long>(p.size()) == (n + 1) * (n + 2) / 2);
        CHECK(inside(p));

        if (n >= 2)
        {
            const auto m = chebyshev1_nodes(n);
            CHECK(m.family == (n % 2 == 0 ? NodeFamily::MinTEven : NodeFamily::NearMinTOdd));
            CHECK(static_cast<long>(m.size()) == moeller_count(n) + (n % 2));
            CHECK(vanishing_residual(m) < 1e-10);
            CHECK(inside(m));
            CHECK(min_separation(m) > 1e-6);
            CHECK(same_set(m.points, swapped(m.points)));
        }
        if (n >= 3 && n % 2 == 1)
            CHECK_FALSE(near_min_t_nodes_odd(n).variant.empty());
    }
}

TEST_CASE("generalized Chebyshev node sets")
{
    for (auto [a, b] : {std::pair{0.5, 0.5}, {0.5, -0.5}, {-0.5, 0.5}, {1.5, 0.5}, {0.3, 0.1}})
        for (int n = 2; n <= 12; ++n)
        {
            CAPTURE(a);
            CAPTURE(b);
            CAPTURE(n);
            const auto s = gencheb_nodes(a, b, n);
            CHECK(static_cast<long>(s.size()) == moeller_count(n) + (n % 2));
            CHECK(inside(s));
            CHECK(vanishing_residual(s) < 1e-9);
            CHECK(same_set(s.points, swapped(s.points), 1e-11));
        }
    // alpha = beta = -1/2 reduces to the Chebyshev-1 families
    for (int n = 2; n <= 10; ++n)
        CHECK(same_set(gencheb_nodes(-0.5, -0.5, n).points, chebyshev1_nodes(n).points, 1e-12));
    CHECK_THROWS_AS(gencheb_nodes(-1.0, 0.0, 4), UnsupportedError);
}

TEST_CASE("Padua points lie on the generating curve")
{
    for (int n = 1; n <= 12; ++n)
    {
        std::vector<Point> curve;
        for (int k = 0; k <= n * (n + 1); ++k)
            curve.push_back(lissajous_curve_point(n, k * pi / (n * (n + 1))));
        const auto s = padua_points(n);
        for (const Point p : s.points)
        {
            double best = 1e300;
            for (const Point c : curve)
                best = std::min(best, max_norm_distance(p, c));
            CHECK(best < 1e-12);
        }
    }
    const Point start = lissajous_curve_point(3, 0.0);
    CHECK(start.x == doctest::Approx(-1.0));
    CHECK(start.y == doctest::Approx(-1.0));
    const Point end = lissajous_curve_point(3, pi);
    CHECK(end.x == doctest::Approx(-1.0));
    CHECK(end.y == doctest::Approx(1.0));
}

TEST_CASE("family names and errors")
{
    for (auto f : {NodeFamily::GaussU, NodeFamily::MinTEven, NodeFamily::NearMinTOdd, NodeFamily::Padua,
                   NodeFamily::GenChebEven, NodeFamily::GenChebOdd})
        CHECK(parse_node_family(to_string(f)) == f);
    CHECK_THROWS_AS(parse_node_family("hexagon"), UnsupportedError);
    CHECK_THROWS_AS(min_t_nodes_even(7), UnsupportedError);
    CHECK_THROWS_AS(near_min_t_nodes_odd(8), UnsupportedError);
    CHECK_THROWS_AS(gauss_u_nodes(0), UnsupportedError);
    CHECK_THROWS_AS(make_nodes(NodeFamily::Discovered, 4), UnsupportedError);
    CHECK_THROWS_AS(make_nodes(NodeFamily::MinTEven, 5), UnsupportedError);
    CHECK(make_nodes(NodeFamily::GenChebEven, 5, 0.5, 0.5).family == NodeFamily::GenChebOdd);
}

TEST_CASE("canonical ordering")
{
    const auto c = canonical_points({{0.5, 0.1}, {-0.2, 0.3}, {0.5, 0.1 + 1e-14}, {-0.2, -0.9}});
    REQUIRE(c.size() == 3);
    CHECK(c[0] == Point{-0.2, -0.9});
    CHECK(c[2].x == 0.5);
}
