#pragma once

#include "cubasquare/basis2d.hpp"
#include "cubasquare/nodes.hpp"
#include "cubasquare/weights.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cubasquare
{

struct CubatureRule
{
    WeightSpec weight = WeightSpec::constant();
    int degree = 0;
    NodeSet nodes;
    std::vector<double> lambdas;
    std::string provenance;

    double weight_sum() const;
};

/// lambda_k = 1 / K_n^*(z_k, z_k).
CubatureRule weights_from_kernel(const NodeSet& nodes, const KernelStarSpec& spec, const OrthoBasis2D& basis);

/// Least-squares solution of the moment equations on the product Chebyshev basis of degree <= exact_degree.
CubatureRule weights_from_vandermonde(const NodeSet& nodes, const WeightSpec& w, int exact_degree);

struct ExactnessReport
{
    int declared_degree = 0;
    bool oracle_available = true;
    bool pass = false;
    double tolerance = 1e-9;
    double max_relative_error = 0.0; // over monomials of degree <= declared
    int scanned_degree = 0;
    std::optional<int> first_failing_degree; // smallest total degree with a failing monomial
    int failing_i = -1;
    int failing_j = -1;
    bool exact_beyond_declared = false; // informational: no failure up to scanned_degree

    std::string summary() const;
};

/// Compares sum lambda_k x_k^i y_k^j with the moment oracle for all i+j <= degree + extra.
/// Relative error: |Q - I| / max(integral of |x^i y^j| W, sum lambda_k |x_k^i y_k^j|).
ExactnessReport exactness_check(const CubatureRule& rule, double tolerance = 1e-9, int extra = 4);

struct LowerBounds
{
    long dim_bound = 0;
    long rank_bound = 0;
    std::optional<long> moeller_bound;
};

LowerBounds lower_bounds(const WeightSpec& w, int n);

/// Weight, nodes, basis and kernel split for one of the explicit families.
struct FamilySetup
{
    WeightSpec weight = WeightSpec::constant();
    NodeSet nodes;
    std::shared_ptr<const OrthoBasis2D> basis;
    std::optional<KernelStarSpec> spec; // absent for Padua
    int degree = 0;
};

/// Natural weight of each family: cheb2 (GaussU), cheb1 (MinT, NearMinT, Padua), gencheb:alpha:beta:-1/2.
FamilySetup family_setup(NodeFamily f, int n, double alpha = -0.5, double beta = -0.5);

/// Kernel weights when a split is available, Vandermonde weights otherwise.
CubatureRule family_rule(const FamilySetup& setup);
CubatureRule family_rule(NodeFamily f, int n, double alpha = -0.5, double beta = -0.5);

} // namespace cubasquare
