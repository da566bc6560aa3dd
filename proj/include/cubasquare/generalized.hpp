#pragma once

#include "cubasquare/basis2d.hpp"
#include "cubasquare/types.hpp"

#include <Eigen/Dense>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace cubasquare
{

/// With x = cos(theta), y = cos(phi): A = cos(theta - phi) >= B = cos(theta + phi).
struct AnglePair
{
    double A;
    double B;
};

AnglePair angle_pair(Point p);

/// P_{k,n}^{alpha,beta,+-1/2} as a polynomial of degree n in (u, v) = (2xy, x^2+y^2-1).
///
/// The -1/2 member is evaluated from its symmetric trigonometric definition. The +1/2 member is
/// a quotient by A - B; it is expanded once in the basis T_a(u/2) T_b(v), a+b <= n, by
/// interpolation on pairs of Chebyshev points, so that it evaluates everywhere including A = B.
class ParabolicPolynomial
{
  public:
    ParabolicPolynomial(double alpha, double beta, int sign, int k, int n);

    double operator()(Point p) const;

    /// The defining formula in the angle variables (singular on A = B for sign = +1).
    double evaluate_angles(double theta, double phi) const;

    int sign() const { return sign_; }
    int k() const { return k_; }
    int n() const { return n_; }

    /// Squared norm of the member against w(A) w(B) dA dB (sign -1) or w(A) w(B) (A-B)^2/4 dA dB (sign +1).
    double norm_squared() const;

  private:
    double from_pair(double A, double B) const;

    double alpha_;
    double beta_;
    int sign_;
    int k_;
    int n_;
    Eigen::VectorXd coefficients_; // +1/2 only: graded (a, b) with a + b <= n
};

/// One basis member: factor(x, y) * P(2xy, x^2+y^2-1).
struct GeneralizedMember
{
    enum class Factor
    {
        One,
        DiffSquares, // x^2 - y^2
        Sum,         // x + y
        Difference,  // x - y
    };
    int family = 1; // 1 or 2 (left subscript)
    int k = 0;
    Factor factor = Factor::One;
    ParabolicPolynomial p;

    double operator()(Point z) const;
};

/// Mutually orthogonal basis of V_n(W_{alpha,beta,gamma}), gamma = sign/2.
/// Layout: family 1 (k = 0..), then family 2 (k = 0..).
std::vector<GeneralizedMember> generalized_basis(double alpha, double beta, int sign, int n);

/// Number of family-1 members at degree n (m+1 for both parities).
int generalized_family1_size(int n);

/// The extra degree-(2m+1) polynomial q_m of the minimal odd rule for gamma = -1/2.
Polynomial2D q_m_polynomial(double alpha, double beta, int m);

/// The generalized basis normalized to be orthonormal for W/mass with closed-form norms.
class GeneralizedChebyshevBasis final : public OrthoBasis2D
{
  public:
    explicit GeneralizedChebyshevBasis(const WeightSpec& w);

    void evaluate_degree(int n, Point p, std::span<double> out) const override;

    /// Squared norm of the raw member (family, k) at degree n relative to the total mass.
    double relative_norm_squared(int n, int index) const;

  private:
    struct Degree
    {
        std::vector<GeneralizedMember> members;
        std::vector<double> scale; // 1 / sqrt(relative norm^2)
    };
    const Degree& degree(int n) const;
    void evaluate_minus_half(int n, Point p, std::span<double> out) const;

    double alpha_;
    double beta_;
    int sign_;
    mutable std::mutex mutex_;
    mutable std::map<int, Degree> cache_;
};

/// Kernel split for the generalized Chebyshev families: Q_n = family 2 (n even) or family 1 (n odd).
KernelStarSpec generalized_kernel_spec(int n);

} // namespace cubasquare
