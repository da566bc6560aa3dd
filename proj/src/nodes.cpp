#include "cubasquare/nodes.hpp"

#include "cubasquare/basis2d.hpp"
#include "cubasquare/generalized.hpp"
#include "cubasquare/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace cubasquare
{

std::string to_string(NodeFamily f)
{
    switch (f)
    {
    case NodeFamily::GaussU:
        return "gaussu";
    case NodeFamily::MinTEven:
        return "mint";
    case NodeFamily::NearMinTOdd:
        return "nearmint";
    case NodeFamily::Padua:
        return "padua";
    case NodeFamily::GenChebEven:
        return "gencheb-even";
    case NodeFamily::GenChebOdd:
        return "gencheb-odd";
    case NodeFamily::Discovered:
        return "discovered";
    }
    return "?";
}

NodeFamily parse_node_family(std::string_view text)
{
    for (auto f : {NodeFamily::GaussU, NodeFamily::MinTEven, NodeFamily::NearMinTOdd, NodeFamily::Padua,
                   NodeFamily::GenChebEven, NodeFamily::GenChebOdd, NodeFamily::Discovered})
        if (text == to_string(f))
            return f;
    if (text == "gencheb")
        return NodeFamily::GenChebEven;
    throw UnsupportedError("unknown node family '" + std::string(text) + "'");
}

long moeller_count(int n)
{
    return dim_polynomials(n - 1) + n / 2;
}

long expected_count(NodeFamily f, int n)
{
    switch (f)
    {
    case NodeFamily::GaussU:
        return dim_polynomials(n - 1);
    case NodeFamily::MinTEven:
    case NodeFamily::GenChebEven:
        return moeller_count(n);
    case NodeFamily::NearMinTOdd:
    case NodeFamily::GenChebOdd:
        return moeller_count(n) + 1;
    case NodeFamily::Padua:
        return dim_polynomials(n);
    case NodeFamily::Discovered:
        return 0;
    }
    return 0;
}

std::vector<Point> canonical_points(std::vector<Point> points, double tol)
{
    std::sort(points.begin(), points.end(), [](Point a, Point b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    std::vector<Point> out;
    out.reserve(points.size());
    for (const Point p : points)
    {
        // Near-duplicates may differ in x by up to tol, so scan back while x is close.
        bool duplicate = false;
        for (auto it = out.rbegin(); it != out.rend() && p.x - it->x <= tol; ++it)
            if (max_norm_distance(p, *it) <= tol)
            {
                duplicate = true;
                break;
            }
        if (!duplicate)
            out.push_back(p);
    }
    return out;
}

namespace
{

struct Variant
{
    std::string name;
    std::function<std::vector<Point>()> generate;
};

double cos_pi(double numerator, double denominator)
{
    return std::cos(numerator * pi / denominator);
}

// Null-space dimension of the degree-n cheb1 evaluation matrix at the points.
int cheb1_nullity(int n, const std::vector<Point>& points)
{
    const ProductBasis basis(WeightSpec::cheb1());
    const Eigen::MatrixXd M = degree_evaluation_matrix(basis, n, points);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
    const auto& s = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 1e-9 * s(0))
            ++rank;
    return n + 1 - rank;
}

// Picks the first variant whose points satisfy the count, the vanishing polynomials and (optionally)
// the expected nullity of the degree-n evaluation matrix.
NodeSet select_variant(NodeFamily family, int n, const std::vector<Variant>& variants, int nullity)
{
    NodeSet set;
    set.family = family;
    set.n = n;
    set.expected_count = static_cast<int>(expected_count(family, n));
    std::string rejected;
    for (const auto& v : variants)
    {
        set.points = canonical_points(v.generate());
        set.variant = v.name;
        if (static_cast<long>(set.points.size()) != set.expected_count)
        {
            rejected += " " + v.name + "(count " + std::to_string(set.points.size()) + ")";
            continue;
        }
        if (vanishing_residual(set) > 1e-10)
        {
            rejected += " " + v.name + "(vanishing)";
            continue;
        }
        if (nullity >= 0 && cheb1_nullity(n, set.points) != nullity)
        {
            rejected += " " + v.name + "(nullity)";
            continue;
        }
        return set;
    }
    throw NumericalError(to_string(family) + " n=" + std::to_string(n) + ": no index variant passes:" + rejected);
}

} // namespace

NodeSet gauss_u_nodes(int n)
{
    if (n < 1)
        throw UnsupportedError("gauss_u_nodes: n must be >= 1");
    const Variant printed{"printed", [n] {
                              std::vector<Point> pts;
                              for (int i = 1; 2 * i <= n + 1; ++i)
                                  for (int j = 1; 2 * j <= n + 1; ++j)
                                      pts.push_back({cos_pi(2 * i, n + 2), cos_pi(2 * j - 1, n + 1)});
                              for (int i = 1; 2 * i <= n + 2; ++i)
                                  for (int j = 1; 2 * j <= n; ++j)
                                      pts.push_back({cos_pi(2 * i - 1, n + 2), cos_pi(2 * j, n + 1)});
                              return pts;
                          }};
    return select_variant(NodeFamily::GaussU, n, {printed}, -1);
}

NodeSet min_t_nodes_even(int n)
{
    if (n < 2 || n % 2 != 0)
        throw UnsupportedError("min_t_nodes_even: n must be even and >= 2");
    const int m = n / 2;
    const auto first = [m](std::vector<Point>& pts) {
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m - 1; ++j)
                pts.push_back({cos_pi(i, m), cos_pi(2 * j + 1, 2 * m)});
    };
    const Variant printed{"printed", [=] {
                              std::vector<Point> pts;
                              first(pts);
                              for (int i = 0; i <= m; ++i)
                                  for (int j = 1; j <= m; ++j)
                                      pts.push_back({cos_pi(2 * i + 1, m), cos_pi(j, m)});
                              return pts;
                          }};
    // Second family mirrored from the first: x on the odd half-angles, y on the full grid.
    const Variant mirrored{"second-family-mirrored", [=] {
                               std::vector<Point> pts;
                               first(pts);
                               for (int i = 0; i <= m - 1; ++i)
                                   for (int j = 0; j <= m; ++j)
                                       pts.push_back({cos_pi(2 * i + 1, 2 * m), cos_pi(j, m)});
                               return pts;
                           }};
    return select_variant(NodeFamily::MinTEven, n, {printed, mirrored}, n + 1 - n / 2);
}

NodeSet near_min_t_nodes_odd(int n)
{
    if (n < 3 || n % 2 != 1)
        throw UnsupportedError("near_min_t_nodes_odd: n must be odd and >= 3");
    const int m = (n + 1) / 2;
    const auto first = [m, n](std::vector<Point>& pts) {
        for (int i = 0; i <= m - 1; ++i)
            for (int j = 0; j <= m - 1; ++j)
                pts.push_back({cos_pi(2 * i, n), cos_pi(2 * j, n)});
    };
    const Variant printed{"printed", [=] {
                              std::vector<Point> pts;
                              first(pts);
                              for (int i = 0; i <= m - 1; ++i)
                                  for (int j = 1; j <= m - 1; ++j)
                                      pts.push_back({cos_pi(2 * m - 2 * i - 1, n), cos_pi(2 * m - j - 1, n)});
                              return pts;
                          }};
    // y index taken with the same odd pattern as x.
    const Variant odd_y{"second-family-odd-y", [=] {
                            std::vector<Point> pts;
                            first(pts);
                            for (int i = 0; i <= m - 1; ++i)
                                for (int j = 0; j <= m - 1; ++j)
                                    pts.push_back({cos_pi(2 * m - 2 * i - 1, n), cos_pi(2 * m - 2 * j - 1, n)});
                            return pts;
                        }};
    return select_variant(NodeFamily::NearMinTOdd, n, {printed, odd_y}, (n + 1) / 2);
}

NodeSet padua_points(int n)
{
    if (n < 1)
        throw UnsupportedError("padua_points: n must be >= 1");
    const int h = n / 2;
    const Variant printed{"printed", [=] {
                              std::vector<Point> pts;
                              for (int i = 0; i <= h; ++i)
                                  for (int j = 1; j <= h + 1; ++j)
                                      pts.push_back({cos_pi(2 * i, n), cos_pi(2 * j - 1, n + 1)});
                              for (int i = 1; i <= h + 1; ++i)
                                  for (int j = 1; j <= h + 2; ++j)
                                      pts.push_back({cos_pi(2 * i - 1, n), cos_pi(2 * j - 2, n + 1)});
                              return pts;
                          }};
    // Printed ranges with the cosine arguments kept inside [0, pi].
    const Variant clipped{"printed-clipped", [=] {
                              std::vector<Point> pts;
                              for (int i = 0; i <= h; ++i)
                                  for (int j = 1; j <= h + 1; ++j)
                                      if (2 * j - 1 <= n + 1)
                                          pts.push_back({cos_pi(2 * i, n), cos_pi(2 * j - 1, n + 1)});
                              for (int i = 1; i <= h + 1; ++i)
                                  for (int j = 1; j <= h + 2; ++j)
                                      if (2 * i - 1 <= n && 2 * j - 2 <= n + 1)
                                          pts.push_back({cos_pi(2 * i - 1, n), cos_pi(2 * j - 2, n + 1)});
                              return pts;
                          }};
    return select_variant(NodeFamily::Padua, n, {printed, clipped}, -1);
}

NodeSet gencheb_nodes(double alpha, double beta, int n)
{
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw UnsupportedError("gencheb_nodes: alpha, beta must exceed -1");
    if (n < 2)
        throw UnsupportedError("gencheb_nodes: n must be >= 2");
    const int m = n / 2;
    const bool even = n % 2 == 0;
    const auto grid = even ? jacobi_angle_grid(alpha, beta, m) : jacobi_angle_grid(alpha + 1.0, beta, m);
    std::vector<Point> pts;
    for (int j = even ? 1 : 0; j <= m; ++j)
        for (int k = j; k <= m; ++k)
        {
            const double tj = grid.thetas[static_cast<std::size_t>(j)], tk = grid.thetas[static_cast<std::size_t>(k)];
            const double s = std::cos((tj - tk) / 2.0), t = std::cos((tj + tk) / 2.0);
            pts.insert(pts.end(), {{s, t}, {t, s}, {-s, -t}, {-t, -s}});
        }
    NodeSet set;
    set.family = even ? NodeFamily::GenChebEven : NodeFamily::GenChebOdd;
    set.n = n;
    set.alpha = alpha;
    set.beta = beta;
    set.expected_count = static_cast<int>(expected_count(set.family, n));
    set.variant = "printed";
    set.points = canonical_points(std::move(pts));
    if (static_cast<long>(set.points.size()) != set.expected_count)
        throw NumericalError("gencheb_nodes: " + std::to_string(set.points.size()) + " distinct points, expected " +
                             std::to_string(set.expected_count));
    return set;
}

NodeSet make_nodes(NodeFamily f, int n, double alpha, double beta)
{
    switch (f)
    {
    case NodeFamily::GaussU:
        return gauss_u_nodes(n);
    case NodeFamily::MinTEven:
        return min_t_nodes_even(n);
    case NodeFamily::NearMinTOdd:
        return near_min_t_nodes_odd(n);
    case NodeFamily::Padua:
        return padua_points(n);
    case NodeFamily::GenChebEven:
    case NodeFamily::GenChebOdd:
        return gencheb_nodes(alpha, beta, n);
    case NodeFamily::Discovered:
        break;
    }
    throw UnsupportedError("discovered node sets cannot be generated directly");
}

std::vector<Polynomial2D> vanishing_polynomials(NodeFamily f, int n, double alpha, double beta)
{
    std::vector<Polynomial2D> out;
    switch (f)
    {
    case NodeFamily::GaussU:
        for (int k = 0; k <= n; ++k)
            out.push_back([n, k](Point p) {
                return chebyshev_u(n - k, p.x) * chebyshev_u(k, p.y) + chebyshev_u(k, p.x) * chebyshev_u(n - 1 - k, p.y);
            });
        break;
    case NodeFamily::MinTEven:
        for (int k = 0; k <= n / 2; ++k)
            out.push_back([n, k](Point p) {
                return chebyshev_t(n - k, p.x) * chebyshev_t(k, p.y) + chebyshev_t(k, p.x) * chebyshev_t(n - k, p.y);
            });
        break;
    case NodeFamily::NearMinTOdd: {
        const int m = (n + 1) / 2;
        for (int k = 1; k <= m; ++k)
            out.push_back([m, k](Point p) {
                return chebyshev_t(2 * m - k, p.x) * chebyshev_t(k - 1, p.y) -
                       chebyshev_t(k - 1, p.x) * chebyshev_t(2 * m - k, p.y);
            });
        break;
    }
    case NodeFamily::Padua:
        out.push_back([n](Point p) { return chebyshev_t(n + 1, p.x) - chebyshev_t(n - 1, p.x); });
        for (int k = 1; k <= n + 1; ++k)
            out.push_back([n, k](Point p) {
                return chebyshev_t(n - k + 1, p.x) * chebyshev_t(k, p.y) +
                       chebyshev_t(n - k + 1, p.y) * chebyshev_t(k - 1, p.x);
            });
        break;
    case NodeFamily::GenChebEven:
    case NodeFamily::GenChebOdd: {
        // Family 1 for even n, family 2 for odd n; each member has m+1 polynomials.
        auto members = generalized_basis(alpha, beta, -1, n);
        const std::size_t first = static_cast<std::size_t>(generalized_family1_size(n));
        const std::size_t begin = n % 2 == 0 ? 0 : first;
        const std::size_t end = n % 2 == 0 ? first : members.size();
        for (std::size_t i = begin; i < end; ++i)
            out.push_back([member = members[i]](Point p) { return member(p); });
        break;
    }
    case NodeFamily::Discovered:
        throw UnsupportedError("discovered node sets carry their own polynomials");
    }
    return out;
}

double vanishing_residual(const NodeSet& nodes)
{
    const auto polys = vanishing_polynomials(nodes.family, nodes.n, nodes.alpha, nodes.beta);
    double worst = 0.0;
    for (const auto& p : polys)
        for (const Point z : nodes.points)
            worst = std::max(worst, std::abs(p(z)));
    return worst;
}

Point lissajous_curve_point(int n, double t)
{
    return {-std::cos((n + 1) * t), -std::cos(n * t)};
}

} // namespace cubasquare
