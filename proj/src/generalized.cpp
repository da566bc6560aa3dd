#include "cubasquare/generalized.hpp"

#include "cubasquare/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cubasquare
{

AnglePair angle_pair(Point p)
{
    const double root = std::sqrt(std::max(0.0, 1.0 - p.x * p.x) * std::max(0.0, 1.0 - p.y * p.y));
    return {p.x * p.y + root, p.x * p.y - root};
}

namespace
{

constexpr double kConditionLimit = 1e8;

std::vector<double> jacobi_values(double alpha, double beta, int n, double x)
{
    std::vector<double> v(static_cast<std::size_t>(std::max(n, 0)) + 1);
    jacobi_normalized_all(alpha, beta, x, v);
    return v;
}

std::vector<double> chebyshev_values(int n, double x)
{
    std::vector<double> t(static_cast<std::size_t>(n) + 1);
    t[0] = 1.0;
    if (n >= 1)
        t[1] = x;
    for (int k = 2; k <= n; ++k)
        t[static_cast<std::size_t>(k)] = 2.0 * x * t[static_cast<std::size_t>(k - 1)] - t[static_cast<std::size_t>(k - 2)];
    return t;
}

} // namespace

ParabolicPolynomial::ParabolicPolynomial(double alpha, double beta, int sign, int k, int n)
    : alpha_(alpha), beta_(beta), sign_(sign), k_(k), n_(n)
{
    if (sign != -1 && sign != 1)
        throw UnsupportedError("parabolic polynomial: sign must be -1 or +1");
    if (k < 0 || k > n)
        throw UnsupportedError("parabolic polynomial: need 0 <= k <= n");
    if (!(alpha > -1.0) || !(beta > -1.0))
        throw UnsupportedError("parabolic polynomial: alpha, beta must exceed -1");
    if (sign_ < 0)
        return;

    // Pairs A > B of n+2 Chebyshev points are unisolvent for symmetric polynomials of degree n per variable.
    const int count = n + 2;
    std::vector<double> t(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        t[static_cast<std::size_t>(i)] = std::cos((2.0 * i + 1.0) * pi / (2.0 * count));
    const auto dim = static_cast<Eigen::Index>(dim_polynomials(n));
    Eigen::MatrixXd M(dim, dim);
    Eigen::VectorXd rhs(dim);
    Eigen::Index row = 0;
    for (int i = 0; i < count; ++i)
        for (int j = i + 1; j < count; ++j)
        {
            const double A = t[static_cast<std::size_t>(i)], B = t[static_cast<std::size_t>(j)];
            const auto tu = chebyshev_values(n, 0.5 * (A + B));
            const auto tv = chebyshev_values(n, A * B);
            Eigen::Index col = 0;
            for (int d = 0; d <= n; ++d)
                for (int b = 0; b <= d; ++b)
                    M(row, col++) = tu[static_cast<std::size_t>(d - b)] * tv[static_cast<std::size_t>(b)];
            rhs(row) = from_pair(A, B);
            ++row;
        }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    if (!(s(s.size() - 1) > 0.0) || s(0) / s(s.size() - 1) > kConditionLimit)
        throw NumericalError("parabolic polynomial: interpolation grid is ill-conditioned at n = " + std::to_string(n));
    coefficients_ = svd.solve(rhs);
}

double ParabolicPolynomial::from_pair(double A, double B) const
{
    if (sign_ < 0)
    {
        const auto pa = jacobi_values(alpha_, beta_, n_, A);
        const auto pb = jacobi_values(alpha_, beta_, n_, B);
        const auto n = static_cast<std::size_t>(n_), k = static_cast<std::size_t>(k_);
        return pa[n] * pb[k] + pa[k] * pb[n];
    }
    const auto pa = jacobi_values(alpha_, beta_, n_ + 1, A);
    const auto pb = jacobi_values(alpha_, beta_, n_ + 1, B);
    const auto n = static_cast<std::size_t>(n_ + 1), k = static_cast<std::size_t>(k_);
    return (pa[n] * pb[k] - pa[k] * pb[n]) / (A - B);
}

double ParabolicPolynomial::evaluate_angles(double theta, double phi) const
{
    return from_pair(std::cos(theta - phi), std::cos(theta + phi));
}

double ParabolicPolynomial::operator()(Point p) const
{
    if (sign_ < 0)
    {
        const auto ab = angle_pair(p);
        return from_pair(ab.A, ab.B);
    }
    const auto tu = chebyshev_values(n_, p.x * p.y);
    const auto tv = chebyshev_values(n_, p.x * p.x + p.y * p.y - 1.0);
    double sum = 0.0;
    Eigen::Index col = 0;
    for (int d = 0; d <= n_; ++d)
        for (int b = 0; b <= d; ++b)
            sum += coefficients_(col++) * tu[static_cast<std::size_t>(d - b)] * tv[static_cast<std::size_t>(b)];
    return sum;
}

double ParabolicPolynomial::norm_squared() const
{
    const double m = jacobi_mass(alpha_, beta_);
    if (sign_ < 0)
        return 2.0 * (k_ == n_ ? 2.0 : 1.0) * m * m;
    return 0.5 * m * m;
}

double GeneralizedMember::operator()(Point z) const
{
    const double value = p(z);
    switch (factor)
    {
    case Factor::One:
        return value;
    case Factor::DiffSquares:
        return (z.x * z.x - z.y * z.y) * value;
    case Factor::Sum:
        return (z.x + z.y) * value;
    case Factor::Difference:
        return (z.x - z.y) * value;
    }
    return value;
}

int generalized_family1_size(int n)
{
    return n / 2 + 1;
}

std::vector<GeneralizedMember> generalized_basis(double alpha, double beta, int sign, int n)
{
    if (n < 0)
        throw UnsupportedError("generalized basis: n must be nonnegative");
    using F = GeneralizedMember::Factor;
    std::vector<GeneralizedMember> out;
    const int m = n / 2;
    if (n % 2 == 0)
    {
        for (int k = 0; k <= m; ++k)
            out.push_back({1, k, F::One, ParabolicPolynomial(alpha, beta, sign, k, m)});
        for (int k = 0; k <= m - 1; ++k)
            out.push_back({2, k, F::DiffSquares, ParabolicPolynomial(alpha + 1.0, beta + 1.0, sign, k, m - 1)});
    }
    else
    {
        for (int k = 0; k <= m; ++k)
            out.push_back({1, k, F::Sum, ParabolicPolynomial(alpha, beta + 1.0, sign, k, m)});
        for (int k = 0; k <= m; ++k)
            out.push_back({2, k, F::Difference, ParabolicPolynomial(alpha + 1.0, beta, sign, k, m)});
    }
    return out;
}

Polynomial2D q_m_polynomial(double alpha, double beta, int m)
{
    if (!(alpha > -1.0) || !(beta > -1.0) || m < 0)
        throw UnsupportedError("q_m: need alpha, beta > -1 and m >= 0");
    return [alpha, beta, m](Point z) {
        const auto ab = angle_pair(z);
        const double pa = jacobi_normalized(alpha, beta + 1.0, m, ab.A);
        const double pb = jacobi_normalized(alpha, beta + 1.0, m, ab.B);
        const double qa = jacobi_normalized(alpha + 1.0, beta, m, ab.A);
        const double qb = jacobi_normalized(alpha + 1.0, beta, m, ab.B);
        return (z.x + z.y) * (pa * qb + pb * qa);
    };
}

// ---------------------------------------------------------------------------------------------

GeneralizedChebyshevBasis::GeneralizedChebyshevBasis(const WeightSpec& w)
    : OrthoBasis2D(w), alpha_(w.alpha()), beta_(w.beta()), sign_(w.gamma() < 0.0 ? -1 : 1)
{
    if (w.kind() != WeightKind::GeneralizedChebyshev)
        throw UnsupportedError("generalized Chebyshev basis needs a gencheb weight");
}

const GeneralizedChebyshevBasis::Degree& GeneralizedChebyshevBasis::degree(int n) const
{
    std::lock_guard lock(mutex_);
    auto it = cache_.find(n);
    if (it != cache_.end())
        return it->second;
    Degree d;
    d.members = generalized_basis(alpha_, beta_, sign_, n);
    for (const auto& member : d.members)
        d.scale.push_back(1.0 / std::sqrt(member.p.norm_squared() / mass()));
    return cache_.emplace(n, std::move(d)).first->second;
}

double GeneralizedChebyshevBasis::relative_norm_squared(int n, int index) const
{
    const auto& d = degree(n);
    const double s = d.scale.at(static_cast<std::size_t>(index));
    return 1.0 / (s * s);
}

void GeneralizedChebyshevBasis::evaluate_minus_half(int n, Point p, std::span<double> out) const
{
    const auto& d = degree(n);
    const auto ab = angle_pair(p);
    const int m = n / 2;
    const auto sym = [](const std::vector<double>& a, const std::vector<double>& b, int top, int k) {
        const auto t = static_cast<std::size_t>(top), kk = static_cast<std::size_t>(k);
        return a[t] * b[kk] + a[kk] * b[t];
    };
    std::size_t r = 0;
    if (n % 2 == 0)
    {
        const auto a1 = jacobi_values(alpha_, beta_, m, ab.A), b1 = jacobi_values(alpha_, beta_, m, ab.B);
        for (int k = 0; k <= m; ++k, ++r)
            out[r] = d.scale[r] * sym(a1, b1, m, k);
        if (m >= 1)
        {
            const double f = p.x * p.x - p.y * p.y;
            const auto a2 = jacobi_values(alpha_ + 1.0, beta_ + 1.0, m - 1, ab.A);
            const auto b2 = jacobi_values(alpha_ + 1.0, beta_ + 1.0, m - 1, ab.B);
            for (int k = 0; k <= m - 1; ++k, ++r)
                out[r] = d.scale[r] * f * sym(a2, b2, m - 1, k);
        }
    }
    else
    {
        const auto a1 = jacobi_values(alpha_, beta_ + 1.0, m, ab.A), b1 = jacobi_values(alpha_, beta_ + 1.0, m, ab.B);
        const auto a2 = jacobi_values(alpha_ + 1.0, beta_, m, ab.A), b2 = jacobi_values(alpha_ + 1.0, beta_, m, ab.B);
        for (int k = 0; k <= m; ++k, ++r)
            out[r] = d.scale[r] * (p.x + p.y) * sym(a1, b1, m, k);
        for (int k = 0; k <= m; ++k, ++r)
            out[r] = d.scale[r] * (p.x - p.y) * sym(a2, b2, m, k);
    }
}

void GeneralizedChebyshevBasis::evaluate_degree(int n, Point p, std::span<double> out) const
{
    if (sign_ < 0)
    {
        evaluate_minus_half(n, p, out);
        return;
    }
    const auto& d = degree(n);
    for (std::size_t r = 0; r < d.members.size(); ++r)
        out[r] = d.scale[r] * d.members[r](p);
}

KernelStarSpec generalized_kernel_spec(int n)
{
    KernelStarSpec spec;
    spec.n = n;
    const int first = generalized_family1_size(n);
    if (n % 2 == 0)
    {
        spec.configuration = RuleConfiguration::Minimal;
        spec.sigma = n + 1 - first;
        spec.q_coefficients = Eigen::MatrixXd::Zero(spec.sigma, n + 1);
        for (int j = 0; j < spec.sigma; ++j)
            spec.q_coefficients(j, first + j) = 1.0;
    }
    else
    {
        spec.configuration = RuleConfiguration::NearMinimal;
        spec.sigma = first;
        spec.q_coefficients = Eigen::MatrixXd::Zero(spec.sigma, n + 1);
        for (int j = 0; j < spec.sigma; ++j)
            spec.q_coefficients(j, j) = 1.0;
    }
    spec.validate();
    return spec;
}

} // namespace cubasquare
