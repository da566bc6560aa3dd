#include "cubasquare/univariate.hpp"

#include "cubasquare/types.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace cubasquare
{

double chebyshev_t(int n, double x)
{
    if (n < 0)
        return 0.0;
    double prev = 1.0;
    if (n == 0)
        return prev;
    double curr = x;
    for (int k = 1; k < n; ++k)
    {
        const double next = 2.0 * x * curr - prev;
        prev = curr;
        curr = next;
    }
    return curr;
}

double chebyshev_u(int n, double x)
{
    if (n < 0)
        return 0.0;
    double prev = 1.0;
    if (n == 0)
        return prev;
    double curr = 2.0 * x;
    for (int k = 1; k < n; ++k)
    {
        const double next = 2.0 * x * curr - prev;
        prev = curr;
        curr = next;
    }
    return curr;
}

double gegenbauer(double lambda, int n, double x)
{
    if (lambda == 0.0)
        throw UnsupportedError("gegenbauer: lambda = 0 is the Chebyshev limit, use chebyshev_t");
    if (!(lambda > -0.5))
        throw UnsupportedError("gegenbauer: lambda must exceed -1/2");
    if (n < 0)
        return 0.0;
    double prev = 1.0;
    if (n == 0)
        return prev;
    double curr = 2.0 * lambda * x;
    for (int k = 1; k < n; ++k)
    {
        const double next = (2.0 * (k + lambda) * x * curr - (k + 2.0 * lambda - 1.0) * prev) / (k + 1);
        prev = curr;
        curr = next;
    }
    return curr;
}

double JacobiRecurrence::diagonal(int n) const
{
    const double ab = alpha + beta;
    if (n == 0)
        return (beta - alpha) / (ab + 2.0);
    const double s = 2.0 * n + ab;
    return (beta * beta - alpha * alpha) / (s * (s + 2.0));
}

double JacobiRecurrence::offdiagonal(int n) const
{
    const double ab = alpha + beta;
    if (n == 1) // the general formula is 0/0 when alpha + beta = -1
        return std::sqrt(4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab)));
    const double s = 2.0 * n + ab;
    return std::sqrt(4.0 * n * (n + alpha) * (n + beta) * (n + ab) / (s * s * (s + 1.0) * (s - 1.0)));
}

void jacobi_normalized_all(double alpha, double beta, double x, std::span<double> out)
{
    if (out.empty())
        return;
    const JacobiRecurrence rec{alpha, beta};
    out[0] = 1.0;
    double prev = 0.0;
    for (std::size_t k = 0; k + 1 < out.size(); ++k)
    {
        const int n = static_cast<int>(k);
        const double b_n = n == 0 ? 0.0 : rec.offdiagonal(n);
        out[k + 1] = ((x - rec.diagonal(n)) * out[k] - b_n * prev) / rec.offdiagonal(n + 1);
        prev = out[k];
    }
}

double jacobi_normalized(double alpha, double beta, int n, double x)
{
    if (n < 0)
        return 0.0;
    std::vector<double> values(static_cast<std::size_t>(n) + 1);
    jacobi_normalized_all(alpha, beta, x, values);
    return values.back();
}

std::pair<double, double> jacobi_normalized_with_derivative(double alpha, double beta, int n, double x)
{
    if (n < 0)
        return {0.0, 0.0};
    const JacobiRecurrence rec{alpha, beta};
    double p_prev = 0.0, p = 1.0;
    double d_prev = 0.0, d = 0.0;
    for (int k = 0; k < n; ++k)
    {
        const double b_k = k == 0 ? 0.0 : rec.offdiagonal(k);
        const double b_next = rec.offdiagonal(k + 1);
        const double a_k = rec.diagonal(k);
        const double p_next = ((x - a_k) * p - b_k * p_prev) / b_next;
        const double d_next = ((x - a_k) * d + p - b_k * d_prev) / b_next;
        p_prev = p;
        p = p_next;
        d_prev = d;
        d = d_next;
    }
    return {p, d};
}

double jacobi_mass(double alpha, double beta)
{
    return std::exp((alpha + beta + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                    std::lgamma(alpha + beta + 2.0));
}

namespace
{

void check_parameters(double alpha, double beta, int m)
{
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw UnsupportedError("Jacobi parameters must exceed -1");
    if (m < 1)
        throw UnsupportedError("Jacobi rule needs m >= 1");
}

// Golub-Welsch: eigenpairs of the symmetric Jacobi matrix.
std::pair<Eigen::VectorXd, Eigen::MatrixXd> jacobi_eigen(double alpha, double beta, int m)
{
    const JacobiRecurrence rec{alpha, beta};
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(m, m);
    for (int k = 0; k < m; ++k)
    {
        J(k, k) = rec.diagonal(k);
        if (k + 1 < m)
            J(k, k + 1) = J(k + 1, k) = rec.offdiagonal(k + 1);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(J);
    if (solver.info() != Eigen::Success)
        throw NumericalError("Golub-Welsch eigen-decomposition did not converge");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

double newton_polish(double alpha, double beta, int m, double x)
{
    const auto [p, dp] = jacobi_normalized_with_derivative(alpha, beta, m, x);
    if (dp == 0.0)
        return x;
    const double step = p / dp;
    // A Newton step larger than the eigenvalue accuracy would indicate a wrong root.
    return std::abs(step) < 1e-8 ? x - step : x;
}

} // namespace

std::vector<double> jacobi_zeros(double alpha, double beta, int m)
{
    check_parameters(alpha, beta, m);
    const auto eig = jacobi_eigen(alpha, beta, m);
    std::vector<double> zeros(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k)
        zeros[static_cast<std::size_t>(k)] = newton_polish(alpha, beta, m, eig.first(k));
    std::sort(zeros.begin(), zeros.end());
    return zeros;
}

JacobiAngleGrid jacobi_angle_grid(double alpha, double beta, int m)
{
    const auto zeros = jacobi_zeros(alpha, beta, m);
    JacobiAngleGrid grid{alpha, beta, m, {0.0}};
    // zeros are increasing, so the angles come out decreasing unless reversed
    for (auto it = zeros.rbegin(); it != zeros.rend(); ++it)
        grid.thetas.push_back(std::acos(std::clamp(*it, -1.0, 1.0)));
    return grid;
}

GaussRule1D gauss_rule_1d(double alpha, double beta, int m)
{
    check_parameters(alpha, beta, m);
    const double mass = jacobi_mass(alpha, beta);
    GaussRule1D rule;
    rule.points = jacobi_zeros(alpha, beta, m);
    rule.weights.reserve(rule.points.size());
    // Christoffel numbers at the polished nodes: mass / sum_{j<m} p_j(x)^2
    std::vector<double> p(static_cast<std::size_t>(m));
    for (const double x : rule.points)
    {
        jacobi_normalized_all(alpha, beta, x, p);
        double sum = 0.0;
        for (const double v : p)
            sum += v * v;
        rule.weights.push_back(mass / sum);
    }
    return rule;
}

} // namespace cubasquare
