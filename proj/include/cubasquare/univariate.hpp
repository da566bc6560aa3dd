#pragma once

#include <span>
#include <vector>

namespace cubasquare
{

// All evaluators return 0 for negative degrees.

double chebyshev_t(int n, double x);
double chebyshev_u(int n, double x);

/// Gegenbauer polynomial C_n^lambda. lambda = 0 is rejected; use chebyshev_t for that limit.
double gegenbauer(double lambda, int n, double x);

/// Three-term recurrence of the Jacobi polynomials that are orthonormal with respect to the
/// probability measure c (1-x)^alpha (1+x)^beta dx:
///   x p_n = b_{n+1} p_{n+1} + a_n p_n + b_n p_{n-1}.
struct JacobiRecurrence
{
    double alpha;
    double beta;

    double diagonal(int n) const;    // a_n
    double offdiagonal(int n) const; // b_n, n >= 1
};

/// Orthonormal Jacobi polynomial p_n^{(alpha,beta)} with p_0 = 1.
double jacobi_normalized(double alpha, double beta, int n, double x);

/// Fills out[k] = p_k^{(alpha,beta)}(x) for k = 0 .. out.size()-1.
void jacobi_normalized_all(double alpha, double beta, double x, std::span<double> out);

/// Value and derivative of p_n^{(alpha,beta)} at x.
std::pair<double, double> jacobi_normalized_with_derivative(double alpha, double beta, int n, double x);

/// Total mass of (1-x)^alpha (1+x)^beta on [-1,1].
double jacobi_mass(double alpha, double beta);

/// Angles theta_0 = 0 < theta_1 < ... < theta_m < pi where cos(theta_k), k >= 1, are the zeros
/// of the degree-m Jacobi polynomial.
struct JacobiAngleGrid
{
    double alpha;
    double beta;
    int m;
    std::vector<double> thetas;
};

JacobiAngleGrid jacobi_angle_grid(double alpha, double beta, int m);

/// Zeros of p_m^{(alpha,beta)} in increasing order (Golub-Welsch plus one Newton step).
std::vector<double> jacobi_zeros(double alpha, double beta, int m);

struct GaussRule1D
{
    std::vector<double> points;
    std::vector<double> weights;
};

/// m-point Gauss-Jacobi rule for (1-x)^alpha (1+x)^beta, exact up to degree 2m-1.
GaussRule1D gauss_rule_1d(double alpha, double beta, int m);

} // namespace cubasquare
