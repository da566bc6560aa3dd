#include "cubasquare/basis2d.hpp"

#include "cubasquare/generalized.hpp"
#include "cubasquare/univariate.hpp"

#include <climits>
#include <cmath>
#include <string>

namespace cubasquare
{

OrthoBasis2D::OrthoBasis2D(WeightSpec w) : weight_(w), mass_(total_mass(w)) {}

int OrthoBasis2D::max_degree() const
{
    return INT_MAX;
}

void OrthoBasis2D::evaluate_upto(int n, Point p, std::span<double> out) const
{
    std::size_t offset = 0;
    for (int d = 0; d <= n; ++d)
    {
        evaluate_degree(d, p, out.subspan(offset, static_cast<std::size_t>(d) + 1));
        offset += static_cast<std::size_t>(d) + 1;
    }
}

std::vector<double> OrthoBasis2D::degree_values(int n, Point p) const
{
    std::vector<double> out(static_cast<std::size_t>(n) + 1);
    evaluate_degree(n, p, out);
    return out;
}

std::vector<double> OrthoBasis2D::values_upto(int n, Point p) const
{
    std::vector<double> out(static_cast<std::size_t>(dim_polynomials(n)));
    evaluate_upto(n, p, out);
    return out;
}

// ---------------------------------------------------------------------------------------------
// ProductBasis

ProductBasis::ProductBasis(const WeightSpec& w) : OrthoBasis2D(w)
{
    if (w.kind() == WeightKind::GeneralizedChebyshev)
        throw UnsupportedError("product basis needs a product weight, got " + w.to_string());
    ax_ = w.axis_exponent(0);
    ay_ = w.axis_exponent(1);
}

void ProductBasis::evaluate_degree(int n, Point p, std::span<double> out) const
{
    std::vector<double> px(static_cast<std::size_t>(n) + 1), py(static_cast<std::size_t>(n) + 1);
    jacobi_normalized_all(ax_, ax_, p.x, px);
    jacobi_normalized_all(ay_, ay_, p.y, py);
    for (int k = 0; k <= n; ++k)
        out[static_cast<std::size_t>(k)] = px[static_cast<std::size_t>(n - k)] * py[static_cast<std::size_t>(k)];
}

void ProductBasis::evaluate_upto(int n, Point p, std::span<double> out) const
{
    std::vector<double> px(static_cast<std::size_t>(n) + 1), py(static_cast<std::size_t>(n) + 1);
    jacobi_normalized_all(ax_, ax_, p.x, px);
    jacobi_normalized_all(ay_, ay_, p.y, py);
    std::size_t r = 0;
    for (int d = 0; d <= n; ++d)
        for (int k = 0; k <= d; ++k)
            out[r++] = px[static_cast<std::size_t>(d - k)] * py[static_cast<std::size_t>(k)];
}

std::unique_ptr<OrthoBasis2D> product_basis(const WeightSpec& w)
{
    return std::make_unique<ProductBasis>(w);
}

// ---------------------------------------------------------------------------------------------
// GramSchmidtBasis

namespace
{

void legendre_reference(int n, Point p, std::span<double> out)
{
    std::vector<double> px(static_cast<std::size_t>(n) + 1), py(static_cast<std::size_t>(n) + 1);
    jacobi_normalized_all(0.0, 0.0, p.x, px);
    jacobi_normalized_all(0.0, 0.0, p.y, py);
    std::size_t r = 0;
    for (int d = 0; d <= n; ++d)
        for (int k = 0; k <= d; ++k)
            out[r++] = px[static_cast<std::size_t>(d - k)] * py[static_cast<std::size_t>(k)];
}

} // namespace

GramSchmidtBasis::GramSchmidtBasis(const WeightSpec& w, int max_degree) : OrthoBasis2D(w), max_degree_(max_degree)
{
    if (max_degree < 0)
        throw UnsupportedError("Gram-Schmidt basis needs max_degree >= 0");
    const auto rule = oracle_rule(w, 2 * max_degree);
    const auto dim = static_cast<Eigen::Index>(dim_polynomials(max_degree));
    const auto count = static_cast<Eigen::Index>(rule.points.size());
    Eigen::MatrixXd B(count, dim);
    std::vector<double> row(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < count; ++i)
    {
        legendre_reference(max_degree, rule.points[static_cast<std::size_t>(i)], row);
        const double s = std::sqrt(rule.weights[static_cast<std::size_t>(i)] / mass());
        for (Eigen::Index j = 0; j < dim; ++j)
            B(i, j) = s * row[static_cast<std::size_t>(j)];
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(B);
    Eigen::MatrixXd R = qr.matrixQR().topRows(dim).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j)
    {
        if (!(std::abs(R(j, j)) > 1e-13))
            throw NumericalError("Gram-Schmidt basis: reference basis is degenerate for " + w.to_string());
        if (R(j, j) < 0.0)
            R.row(j) *= -1.0;
    }
    const Eigen::MatrixXd Rinv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(dim, dim));
    coefficients_ = Rinv.transpose();
}

void GramSchmidtBasis::evaluate_upto(int n, Point p, std::span<double> out) const
{
    if (n > max_degree_)
        throw UnsupportedError("Gram-Schmidt basis built only to degree " + std::to_string(max_degree_));
    const auto dim = static_cast<Eigen::Index>(dim_polynomials(n));
    Eigen::VectorXd ref(dim);
    legendre_reference(n, p, std::span<double>(ref.data(), static_cast<std::size_t>(dim)));
    const Eigen::VectorXd v = coefficients_.topLeftCorner(dim, dim).triangularView<Eigen::Lower>() * ref;
    for (Eigen::Index i = 0; i < dim; ++i)
        out[static_cast<std::size_t>(i)] = v(i);
}

void GramSchmidtBasis::evaluate_degree(int n, Point p, std::span<double> out) const
{
    std::vector<double> all(static_cast<std::size_t>(dim_polynomials(n)));
    evaluate_upto(n, p, all);
    const auto offset = static_cast<std::size_t>(dim_polynomials(n - 1));
    for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k)
        out[k] = all[offset + k];
}

std::unique_ptr<OrthoBasis2D> make_basis(const WeightSpec& w, int max_degree)
{
    switch (w.kind())
    {
    case WeightKind::GeneralizedChebyshev:
        return std::make_unique<GeneralizedChebyshevBasis>(w);
    default:
        (void)max_degree;
        return product_basis(w);
    }
}

Eigen::MatrixXd degree_evaluation_matrix(const OrthoBasis2D& basis, int n, std::span<const Point> points)
{
    Eigen::MatrixXd M(static_cast<Eigen::Index>(points.size()), n + 1);
    std::vector<double> row(static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        basis.evaluate_degree(n, points[i], row);
        for (int k = 0; k <= n; ++k)
            M(static_cast<Eigen::Index>(i), k) = row[static_cast<std::size_t>(k)];
    }
    return M;
}

Eigen::MatrixXd evaluation_matrix_upto(const OrthoBasis2D& basis, int n, std::span<const Point> points)
{
    const auto dim = static_cast<Eigen::Index>(dim_polynomials(n));
    Eigen::MatrixXd M(static_cast<Eigen::Index>(points.size()), dim);
    std::vector<double> row(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        basis.evaluate_upto(n, points[i], row);
        for (Eigen::Index k = 0; k < dim; ++k)
            M(static_cast<Eigen::Index>(i), k) = row[static_cast<std::size_t>(k)];
    }
    return M;
}

// ---------------------------------------------------------------------------------------------
// Three-term relation

namespace
{

double legendre_a(int k)
{
    return (k + 1.0) / std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0));
}

} // namespace

ThreeTermCoefficients three_term(const WeightSpec& w, int n)
{
    if (n < 0)
        throw UnsupportedError("three_term: n must be nonnegative");
    if (w.kind() == WeightKind::GeneralizedChebyshev)
    {
        auto basis = make_basis(w, n + 1);
        auto t = three_term_projected(*basis, n);
        t.B1.setZero();
        t.B2.setZero();
        return t;
    }
    ThreeTermCoefficients t;
    t.n = n;
    t.A1 = Eigen::MatrixXd::Zero(n + 1, n + 2);
    t.A2 = Eigen::MatrixXd::Zero(n + 1, n + 2);
    t.B1 = Eigen::MatrixXd::Zero(n + 1, n + 1);
    t.B2 = Eigen::MatrixXd::Zero(n + 1, n + 1);
    const JacobiRecurrence rx{w.axis_exponent(0), w.axis_exponent(0)};
    const JacobiRecurrence ry{w.axis_exponent(1), w.axis_exponent(1)};
    const bool legendre = w.kind() == WeightKind::Constant;
    for (int k = 0; k <= n; ++k)
    {
        t.A1(k, k) = legendre ? legendre_a(n - k) : rx.offdiagonal(n - k + 1);
        t.A2(k, k + 1) = legendre ? legendre_a(k) : ry.offdiagonal(k + 1);
    }
    return t;
}

ThreeTermCoefficients three_term_projected(const OrthoBasis2D& basis, int n)
{
    const auto rule = oracle_rule(basis.weight(), 2 * n + 2);
    ThreeTermCoefficients t;
    t.n = n;
    t.A1 = Eigen::MatrixXd::Zero(n + 1, n + 2);
    t.A2 = Eigen::MatrixXd::Zero(n + 1, n + 2);
    t.B1 = Eigen::MatrixXd::Zero(n + 1, n + 1);
    t.B2 = Eigen::MatrixXd::Zero(n + 1, n + 1);
    std::vector<double> pn(static_cast<std::size_t>(n) + 1), pn1(static_cast<std::size_t>(n) + 2);
    for (std::size_t i = 0; i < rule.points.size(); ++i)
    {
        const Point p = rule.points[i];
        const double w = rule.weights[i] / basis.mass();
        basis.evaluate_degree(n, p, pn);
        basis.evaluate_degree(n + 1, p, pn1);
        for (int k = 0; k <= n; ++k)
        {
            const double xk = w * p.x * pn[static_cast<std::size_t>(k)];
            const double yk = w * p.y * pn[static_cast<std::size_t>(k)];
            for (int j = 0; j <= n + 1; ++j)
            {
                t.A1(k, j) += xk * pn1[static_cast<std::size_t>(j)];
                t.A2(k, j) += yk * pn1[static_cast<std::size_t>(j)];
            }
            for (int j = 0; j <= n; ++j)
            {
                t.B1(k, j) += xk * pn[static_cast<std::size_t>(j)];
                t.B2(k, j) += yk * pn[static_cast<std::size_t>(j)];
            }
        }
    }
    return t;
}

// ---------------------------------------------------------------------------------------------
// Kernels

double kernel_K(const OrthoBasis2D& basis, int n, Point z1, Point z2)
{
    if (n < 0)
        return 0.0;
    const auto a = basis.values_upto(n, z1);
    const auto b = basis.values_upto(n, z2);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        sum += a[i] * b[i];
    return sum / basis.mass();
}

double kernel_K(const WeightSpec& w, int n, Point z1, Point z2)
{
    return kernel_K(*make_basis(w, n), n, z1, z2);
}

const char* to_string(RuleConfiguration c)
{
    switch (c)
    {
    case RuleConfiguration::GaussianEven:
        return "gaussian-even";
    case RuleConfiguration::GaussianOdd:
        return "gaussian-odd";
    case RuleConfiguration::Minimal:
        return "minimal";
    case RuleConfiguration::NearMinimal:
        return "near-minimal";
    }
    return "?";
}

int KernelStarSpec::expected_nodes() const
{
    return static_cast<int>(dim_polynomials(n - 1)) + sigma;
}

int KernelStarSpec::degree() const
{
    return configuration == RuleConfiguration::GaussianEven ? 2 * n - 2 : 2 * n - 1;
}

namespace
{

int expected_sigma(int n, RuleConfiguration c)
{
    switch (c)
    {
    case RuleConfiguration::GaussianEven:
    case RuleConfiguration::GaussianOdd:
        return 0;
    case RuleConfiguration::Minimal:
        return n / 2;
    case RuleConfiguration::NearMinimal:
        return n / 2 + 1;
    }
    return -1;
}

// Orthonormal basis of the orthogonal complement of the column span of C ((n+1) x r).
Eigen::MatrixXd complement_rows(const Eigen::MatrixXd& C, double tol)
{
    const auto dim = C.rows();
    if (C.cols() == 0)
        return Eigen::MatrixXd::Identity(dim, dim);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol * s(0))
            ++rank;
    return svd.matrixU().rightCols(dim - rank).transpose();
}

} // namespace

void KernelStarSpec::validate() const
{
    if (n < 1)
        throw UnsupportedError("KernelStarSpec: n must be positive");
    const int want = expected_sigma(n, configuration);
    if (sigma != want)
        throw NumericalError("KernelStarSpec: sigma = " + std::to_string(sigma) + " but the " +
                             to_string(configuration) + " configuration at n = " + std::to_string(n) +
                             " needs " + std::to_string(want));
    if (q_coefficients.rows() != sigma || (sigma > 0 && q_coefficients.cols() != n + 1))
        throw NumericalError("KernelStarSpec: coefficient matrix has the wrong shape");
    if (sigma > 0)
    {
        const Eigen::MatrixXd gram = q_coefficients * q_coefficients.transpose();
        if ((gram - Eigen::MatrixXd::Identity(sigma, sigma)).cwiseAbs().maxCoeff() > 1e-10)
            throw NumericalError("KernelStarSpec: complement rows are not orthonormal");
        if (q_scale.size() > 0 && (q_scale.rows() != sigma || q_scale.cols() != sigma))
            throw NumericalError("KernelStarSpec: metric has the wrong shape");
    }
}

KernelStarSpec KernelStarSpec::from_vanishing(const OrthoBasis2D& basis, int n, RuleConfiguration c,
                                              const std::vector<Polynomial2D>& vanishing)
{
    const auto rule = oracle_rule(basis.weight(), 2 * n);
    const auto r = static_cast<Eigen::Index>(vanishing.size());
    Eigen::MatrixXd coeffs = Eigen::MatrixXd::Zero(n + 1, r);
    Eigen::VectorXd norms = Eigen::VectorXd::Zero(r);
    std::vector<double> pn(static_cast<std::size_t>(n) + 1);
    for (std::size_t i = 0; i < rule.points.size(); ++i)
    {
        const double w = rule.weights[i] / basis.mass();
        basis.evaluate_degree(n, rule.points[i], pn);
        for (Eigen::Index j = 0; j < r; ++j)
        {
            const double f = vanishing[static_cast<std::size_t>(j)](rule.points[i]);
            norms(j) += w * f * f;
            for (int k = 0; k <= n; ++k)
                coeffs(k, j) += w * f * pn[static_cast<std::size_t>(k)];
        }
    }
    for (Eigen::Index j = 0; j < r; ++j)
    {
        // A member of V_n is fully captured by its projection onto V_n.
        const double captured = coeffs.col(j).squaredNorm();
        if (std::abs(norms(j) - captured) > 1e-9 * std::max(norms(j), 1e-300))
            throw NumericalError("KernelStarSpec: vanishing polynomial " + std::to_string(j) +
                                 " is not orthogonal to lower degrees");
    }
    KernelStarSpec spec;
    spec.n = n;
    spec.configuration = c;
    spec.q_coefficients = complement_rows(coeffs, 1e-10);
    spec.sigma = static_cast<int>(spec.q_coefficients.rows());
    spec.validate();
    return spec;
}

KernelStarSpec KernelStarSpec::from_nodes(const OrthoBasis2D& basis, int n, RuleConfiguration c,
                                          std::span<const Point> nodes)
{
    const Eigen::MatrixXd M = degree_evaluation_matrix(basis, n, nodes);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > 1e-9 * s(0))
            ++rank;
    KernelStarSpec spec;
    spec.n = n;
    spec.configuration = c;
    // The null space holds the vanishing polynomials; its complement is the row space of M.
    spec.q_coefficients = svd.matrixV().leftCols(rank).transpose();
    spec.sigma = static_cast<int>(rank);
    spec.validate();
    return spec;
}

double KernelStarSpec::calibrate(const OrthoBasis2D& basis, std::span<const Point> nodes)
{
    if (static_cast<long>(nodes.size()) != expected_nodes())
        throw NumericalError("KernelStarSpec::calibrate: " + std::to_string(nodes.size()) + " nodes, split needs " +
                             std::to_string(expected_nodes()));
    q_scale.resize(0, 0);
    const auto N = static_cast<Eigen::Index>(nodes.size());
    const auto lower = static_cast<Eigen::Index>(dim_polynomials(n - 1));
    Eigen::MatrixXd F(N, lower + sigma);
    std::vector<double> row(static_cast<std::size_t>(lower + sigma));
    for (Eigen::Index i = 0; i < N; ++i)
    {
        kernel_star_features(*this, basis, nodes[static_cast<std::size_t>(i)], row);
        F.row(i) = Eigen::Map<const Eigen::RowVectorXd>(row.data(), lower + sigma);
    }
    if (sigma > 0)
    {
        // Least squares for the off-diagonal entries of A A^t + B C B^t = 0; unknowns are vec(C).
        // Normal operator sum_{j != k} (b_k b_k^t) (x) (b_j b_j^t), with the sum over k != j taken from
        // prefix and suffix sums rather than as a difference of full sums.
        const Eigen::MatrixXd A = F.leftCols(lower), B = F.rightCols(sigma);
        Eigen::MatrixXd S = A * A.transpose();
        S.diagonal().setZero();
        const Eigen::Index u = static_cast<Eigen::Index>(sigma) * sigma;
        std::vector<Eigen::MatrixXd> suffix(static_cast<std::size_t>(N) + 1, Eigen::MatrixXd::Zero(sigma, sigma));
        for (Eigen::Index j = N - 1; j >= 0; --j)
            suffix[static_cast<std::size_t>(j)] =
                suffix[static_cast<std::size_t>(j) + 1] + B.row(j).transpose() * B.row(j);
        Eigen::MatrixXd op = Eigen::MatrixXd::Zero(u, u);
        Eigen::MatrixXd prefix = Eigen::MatrixXd::Zero(sigma, sigma);
        for (Eigen::Index j = 0; j < N; ++j)
        {
            const Eigen::MatrixXd others = prefix + suffix[static_cast<std::size_t>(j) + 1];
            const Eigen::MatrixXd own = B.row(j).transpose() * B.row(j);
            for (Eigen::Index b = 0; b < sigma; ++b)
                for (Eigen::Index d = 0; d < sigma; ++d)
                    op.block(b * sigma, d * sigma, sigma, sigma) += others(b, d) * own;
            prefix += own;
        }
        const Eigen::MatrixXd rhs_m = -(B.transpose() * S * B);
        const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(rhs_m.data(), u);
        const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(op);
        const Eigen::VectorXd c = cod.solve(rhs);
        Eigen::MatrixXd C = Eigen::Map<const Eigen::MatrixXd>(c.data(), sigma, sigma);
        C = 0.5 * (C + C.transpose()).eval();
        // The normal equations square the conditioning; refine against the off-diagonal residual of K.
        for (int step = 0; step < 3; ++step)
        {
            Eigen::MatrixXd R = S + B * C * B.transpose();
            R.diagonal().setZero();
            const Eigen::MatrixXd g = -(B.transpose() * R * B);
            const Eigen::VectorXd dc = cod.solve(Eigen::Map<const Eigen::VectorXd>(g.data(), u));
            const Eigen::MatrixXd D = Eigen::Map<const Eigen::MatrixXd>(dc.data(), sigma, sigma);
            C += 0.5 * (D + D.transpose());
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(C);
        if (!(eig.eigenvalues().minCoeff() > 0.0))
            throw NumericalError("KernelStarSpec::calibrate: the metric on span Q is not positive definite; "
                                 "the nodes do not carry an interpolatory rule for this split");
        q_scale = eig.operatorSqrt();
        F.rightCols(sigma) = F.rightCols(sigma) * q_scale.transpose();
    }
    const Eigen::MatrixXd K = F * F.transpose();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < N; ++j)
        for (Eigen::Index k = 0; k < N; ++k)
            if (j != k)
                worst = std::max(worst, std::abs(K(j, k)) / std::sqrt(K(j, j) * K(k, k)));
    return worst;
}

KernelStarSpec KernelStarSpec::gaussian(int n, RuleConfiguration c)
{
    KernelStarSpec spec;
    spec.n = n;
    spec.configuration = c;
    spec.sigma = 0;
    spec.q_coefficients = Eigen::MatrixXd(0, n + 1);
    spec.validate();
    return spec;
}

void kernel_star_features(const KernelStarSpec& spec, const OrthoBasis2D& basis, Point z, std::span<double> out)
{
    const int n = spec.n;
    const auto lower = static_cast<std::size_t>(dim_polynomials(n - 1));
    const double scale = 1.0 / std::sqrt(basis.mass());
    if (n >= 1)
        basis.evaluate_upto(n - 1, z, out.subspan(0, lower));
    if (spec.sigma > 0)
    {
        std::vector<double> pn(static_cast<std::size_t>(n) + 1);
        basis.evaluate_degree(n, z, pn);
        Eigen::VectorXd q = spec.q_coefficients * Eigen::Map<const Eigen::VectorXd>(pn.data(), n + 1);
        if (spec.q_scale.size() > 0)
            q = spec.q_scale * q;
        for (int j = 0; j < spec.sigma; ++j)
            out[lower + static_cast<std::size_t>(j)] = q(j);
    }
    for (std::size_t i = 0; i < lower + static_cast<std::size_t>(spec.sigma); ++i)
        out[i] *= scale;
}

double kernel_K_star(const KernelStarSpec& spec, const OrthoBasis2D& basis, Point z1, Point z2)
{
    const auto len = static_cast<std::size_t>(spec.expected_nodes());
    std::vector<double> a(len), b(len);
    kernel_star_features(spec, basis, z1, a);
    kernel_star_features(spec, basis, z2, b);
    double sum = 0.0;
    for (std::size_t i = 0; i < len; ++i)
        sum += a[i] * b[i];
    return sum;
}

} // namespace cubasquare
