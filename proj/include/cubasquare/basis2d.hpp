#pragma once

#include "cubasquare/types.hpp"
#include "cubasquare/weights.hpp"

#include <Eigen/Dense>

#include <memory>
#include <span>
#include <vector>

namespace cubasquare
{

/// Orthonormal basis of the spaces V_n(W) of orthogonal polynomials on the square.
///
/// Members are orthonormal for the probability measure W/mass, so that the reproducing kernel is
/// K_n(z, z') = (1/mass) sum_{m<=n} sum_k P_k^m(z) P_k^m(z').
class OrthoBasis2D
{
  public:
    explicit OrthoBasis2D(WeightSpec w);
    virtual ~OrthoBasis2D() = default;

    const WeightSpec& weight() const { return weight_; }
    double mass() const { return mass_; }

    /// Largest degree the basis can evaluate (INT_MAX for closed-form bases).
    virtual int max_degree() const;

    /// out[k] = P_k^n(p) for 0 <= k <= n.
    virtual void evaluate_degree(int n, Point p, std::span<double> out) const = 0;

    /// All members of degree <= n in graded order, out.size() == dim_polynomials(n).
    virtual void evaluate_upto(int n, Point p, std::span<double> out) const;

    std::vector<double> degree_values(int n, Point p) const;
    std::vector<double> values_upto(int n, Point p) const;

  private:
    WeightSpec weight_;
    double mass_;
};

/// Closed-form product basis p_{n-k}(x) p_k(y) for Constant and product Gegenbauer/Jacobi weights.
class ProductBasis final : public OrthoBasis2D
{
  public:
    explicit ProductBasis(const WeightSpec& w);
    void evaluate_degree(int n, Point p, std::span<double> out) const override;
    void evaluate_upto(int n, Point p, std::span<double> out) const override;

  private:
    double ax_;
    double ay_;
};

/// Orthonormal basis obtained by Householder QR of a product Legendre basis sampled on the
/// moment oracle. Works for every weight with an exact oracle; degree-limited.
class GramSchmidtBasis final : public OrthoBasis2D
{
  public:
    GramSchmidtBasis(const WeightSpec& w, int max_degree);
    int max_degree() const override { return max_degree_; }
    void evaluate_degree(int n, Point p, std::span<double> out) const override;
    void evaluate_upto(int n, Point p, std::span<double> out) const override;

  private:
    int max_degree_;
    Eigen::MatrixXd coefficients_; // row r: member r in terms of the reference basis (lower triangular)
};

std::unique_ptr<OrthoBasis2D> product_basis(const WeightSpec& w);

/// Closed form where available (product weights, generalized Chebyshev), otherwise Gram-Schmidt.
std::unique_ptr<OrthoBasis2D> make_basis(const WeightSpec& w, int max_degree);

/// Rows = points, columns = the n+1 members of degree n.
Eigen::MatrixXd degree_evaluation_matrix(const OrthoBasis2D& basis, int n, std::span<const Point> points);

/// Rows = points, columns = all members of degree <= n.
Eigen::MatrixXd evaluation_matrix_upto(const OrthoBasis2D& basis, int n, std::span<const Point> points);

/// Coefficients of the three-term relation x_i P_n = A_{n,i} P_{n+1} + B_{n,i} P_n + A_{n-1,i}^t P_{n-1}.
struct ThreeTermCoefficients
{
    int n = 0;
    Eigen::MatrixXd A1; // (n+1) x (n+2)
    Eigen::MatrixXd A2;
    Eigen::MatrixXd B1; // (n+1) x (n+1)
    Eigen::MatrixXd B2;
};

/// Closed form for product weights, oracle projections otherwise.
ThreeTermCoefficients three_term(const WeightSpec& w, int n);

/// Oracle projections <x_i P_k^n, P_j^m> against an arbitrary basis.
ThreeTermCoefficients three_term_projected(const OrthoBasis2D& basis, int n);

double kernel_K(const OrthoBasis2D& basis, int n, Point z1, Point z2);
double kernel_K(const WeightSpec& w, int n, Point z1, Point z2);

enum class RuleConfiguration
{
    GaussianEven, // degree 2n-2, N = dim Pi_{n-1}
    GaussianOdd,  // degree 2n-1, N = dim Pi_{n-1}
    Minimal,      // degree 2n-1, sigma = floor(n/2)
    NearMinimal,  // degree 2n-1, sigma = floor(n/2) + 1
};

const char* to_string(RuleConfiguration c);

/// The split of V_n into polynomials vanishing on the nodes and their orthonormal complement Q_n.
///
/// K_n^*(z, z') = K_{n-1}(z, z') + (1/mass) sum_j Q_j(z) Q_j(z') with Q_j = sum_k q(j,k) P_k^n.
struct KernelStarSpec
{
    int n = 0;
    int sigma = 0;
    RuleConfiguration configuration = RuleConfiguration::Minimal;
    Eigen::MatrixXd q_coefficients; // sigma x (n+1), orthonormal rows
    Eigen::MatrixXd q_scale;        // sigma x sigma symmetric root C^(1/2); identity until calibrated

    int expected_nodes() const; // dim Pi_{n-1} + sigma
    int degree() const;         // 2n-2 or 2n-1

    /// Complement of the span of the given vanishing polynomials, projected onto V_n via the oracle.
    static KernelStarSpec from_vanishing(const OrthoBasis2D& basis, int n, RuleConfiguration c,
                                         const std::vector<Polynomial2D>& vanishing);

    /// Complement of the null space of the degree-n evaluation matrix at the nodes.
    static KernelStarSpec from_nodes(const OrthoBasis2D& basis, int n, RuleConfiguration c,
                                     std::span<const Point> nodes);

    /// Gaussian configurations: sigma = 0.
    static KernelStarSpec gaussian(int n, RuleConfiguration c);

    /// Fixes the metric on span Q so that K_n^*(z_j, z_k) = 0 for distinct nodes: with the
    /// continuous-orthonormal Q_j the sum in K_n^* is not the reproducing kernel of the discrete inner
    /// product. Solves for a symmetric positive definite C in K_{n-1} + Q^t C Q by linear least squares.
    /// Returns the largest off-diagonal |K*(z_j, z_k)| relative to the diagonal; throws NumericalError
    /// when C is not positive definite.
    double calibrate(const OrthoBasis2D& basis, std::span<const Point> nodes);

    /// Validates sigma against the configuration and orthonormality of the rows.
    void validate() const;
};

/// Feature vector phi(z) with K_n^*(z, z') = phi(z) . phi(z'); length dim_polynomials(n-1) + sigma.
void kernel_star_features(const KernelStarSpec& spec, const OrthoBasis2D& basis, Point z, std::span<double> out);

double kernel_K_star(const KernelStarSpec& spec, const OrthoBasis2D& basis, Point z1, Point z2);

} // namespace cubasquare
