#pragma once

#include "cubasquare/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace cubasquare
{

enum class NodeFamily
{
    GaussU,      // Gaussian rule of degree 2n-2 for the Chebyshev weight of the second kind
    MinTEven,    // minimal rule of degree 2n-1, Chebyshev first kind, n even
    NearMinTOdd, // near-minimal rule of degree 2n-1, Chebyshev first kind, n odd
    Padua,
    GenChebEven, // X_{2m}^{alpha,beta}
    GenChebOdd,  // X_{2m+1}^{alpha,beta}
    Discovered,  // common zeros found by the discover module
};

std::string to_string(NodeFamily f);
NodeFamily parse_node_family(std::string_view text);

struct NodeSet
{
    std::vector<Point> points; // sorted lexicographically, pairwise distinct
    NodeFamily family = NodeFamily::Discovered;
    int n = 0;
    int expected_count = 0;
    double alpha = -0.5; // generalized Chebyshev parameters (unused otherwise)
    double beta = -0.5;
    std::string variant; // index-range variant used to enumerate the points

    std::size_t size() const { return points.size(); }
};

/// N_min = n(n+1)/2 + floor(n/2).
long moeller_count(int n);

long expected_count(NodeFamily f, int n);

/// Sorts lexicographically and removes points within `tol` (max norm) of an earlier one.
std::vector<Point> canonical_points(std::vector<Point> points, double tol = 1e-12);

NodeSet gauss_u_nodes(int n);
NodeSet min_t_nodes_even(int n);
NodeSet near_min_t_nodes_odd(int n);
NodeSet padua_points(int n);
NodeSet gencheb_nodes(double alpha, double beta, int n);

/// Dispatches on family. MinT and NearMinT require the matching parity; GenChebEven/Odd accept either.
NodeSet make_nodes(NodeFamily f, int n, double alpha = -0.5, double beta = -0.5);

/// The orthogonal (or generating) polynomials whose common zeros are the nodes.
std::vector<Polynomial2D> vanishing_polynomials(NodeFamily f, int n, double alpha = -0.5, double beta = -0.5);

/// Max |p(z)| over the vanishing polynomials and nodes.
double vanishing_residual(const NodeSet& nodes);

/// (-cos((n+1)t), -cos(nt)), the generating curve of the Padua points.
Point lissajous_curve_point(int n, double t);

} // namespace cubasquare
