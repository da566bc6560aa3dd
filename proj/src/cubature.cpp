#include "cubasquare/cubature.hpp"

#include "cubasquare/generalized.hpp"
#include "cubasquare/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cubasquare
{

double CubatureRule::weight_sum() const
{
    return std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
}

CubatureRule weights_from_kernel(const NodeSet& nodes, const KernelStarSpec& spec, const OrthoBasis2D& basis)
{
    if (static_cast<long>(nodes.size()) != spec.expected_nodes())
        throw NumericalError("weights_from_kernel: " + std::to_string(nodes.size()) + " nodes but the kernel split needs " +
                             std::to_string(spec.expected_nodes()));
    CubatureRule rule;
    rule.weight = basis.weight();
    rule.degree = spec.degree();
    rule.nodes = nodes;
    rule.lambdas.reserve(nodes.size());
    for (const Point z : nodes.points)
    {
        const double k = kernel_K_star(spec, basis, z, z);
        if (!(k > 0.0))
            throw NumericalError("weights_from_kernel: nonpositive kernel diagonal at a node");
        rule.lambdas.push_back(1.0 / k);
    }
    rule.provenance = "family=" + to_string(nodes.family) + " n=" + std::to_string(nodes.n) +
                      " variant=" + nodes.variant + " weights=kernel(" + to_string(spec.configuration) +
                      ",sigma=" + std::to_string(spec.sigma) + ")";
    return rule;
}

namespace
{

// T_a(x) T_b(y) for a + b <= d in graded order.
void chebyshev_product_row(int d, Point p, std::span<double> out)
{
    std::vector<double> tx(static_cast<std::size_t>(d) + 1), ty(static_cast<std::size_t>(d) + 1);
    for (int k = 0; k <= d; ++k)
    {
        tx[static_cast<std::size_t>(k)] = chebyshev_t(k, p.x);
        ty[static_cast<std::size_t>(k)] = chebyshev_t(k, p.y);
    }
    std::size_t r = 0;
    for (int s = 0; s <= d; ++s)
        for (int b = 0; b <= s; ++b)
            out[r++] = tx[static_cast<std::size_t>(s - b)] * ty[static_cast<std::size_t>(b)];
}

} // namespace

CubatureRule weights_from_vandermonde(const NodeSet& nodes, const WeightSpec& w, int exact_degree)
{
    const auto dim = static_cast<Eigen::Index>(dim_polynomials(exact_degree));
    const auto count = static_cast<Eigen::Index>(nodes.size());
    std::vector<double> row(static_cast<std::size_t>(dim));

    Eigen::VectorXd moments = Eigen::VectorXd::Zero(dim);
    const auto oracle = oracle_rule(w, exact_degree);
    for (std::size_t i = 0; i < oracle.points.size(); ++i)
    {
        chebyshev_product_row(exact_degree, oracle.points[i], row);
        for (Eigen::Index j = 0; j < dim; ++j)
            moments(j) += oracle.weights[i] * row[static_cast<std::size_t>(j)];
    }

    Eigen::MatrixXd M(dim, count);
    for (Eigen::Index k = 0; k < count; ++k)
    {
        chebyshev_product_row(exact_degree, nodes.points[static_cast<std::size_t>(k)], row);
        for (Eigen::Index j = 0; j < dim; ++j)
            M(j, k) = row[static_cast<std::size_t>(j)];
    }
    const Eigen::VectorXd lambda = M.completeOrthogonalDecomposition().solve(moments);
    const double scale = std::max(std::abs(moments(0)), 1e-300);
    const double residual = (M * lambda - moments).cwiseAbs().maxCoeff() / scale;
    if (!(residual <= 1e-10))
    {
        std::ostringstream msg;
        msg << "weights_from_vandermonde: moment residual " << residual << " at degree " << exact_degree;
        throw NumericalError(msg.str());
    }
    CubatureRule rule;
    rule.weight = w;
    rule.degree = exact_degree;
    rule.nodes = nodes;
    rule.lambdas.assign(lambda.data(), lambda.data() + lambda.size());
    if (*std::min_element(rule.lambdas.begin(), rule.lambdas.end()) <= 0.0)
        throw NumericalError("weights_from_vandermonde: nonpositive weight");
    std::ostringstream prov;
    prov << "family=" << to_string(nodes.family) << " n=" << nodes.n;
    if (!nodes.variant.empty())
        prov << " variant=" << nodes.variant;
    prov << " weights=vandermonde(residual=" << residual << ")";
    rule.provenance = prov.str();
    return rule;
}

std::string ExactnessReport::summary() const
{
    std::ostringstream out;
    if (!oracle_available)
    {
        out << "approximate oracle only: no exact moment oracle for this weight; exactness not verified";
        return out.str();
    }
    out << (pass ? "PASS" : "FAIL") << " declared degree " << declared_degree << ", max relative error "
        << max_relative_error;
    if (first_failing_degree)
        out << ", first failing degree " << *first_failing_degree << " (x^" << failing_i << " y^" << failing_j << ")";
    else
        out << ", exact through scanned degree " << scanned_degree;
    return out.str();
}

ExactnessReport exactness_check(const CubatureRule& rule, double tolerance, int extra)
{
    ExactnessReport report;
    report.declared_degree = rule.degree;
    report.tolerance = tolerance;
    report.scanned_degree = rule.degree + std::max(extra, 0);
    if (!rule.weight.has_exact_oracle())
    {
        report.oracle_available = false;
        return report;
    }
    const int D = report.scanned_degree;
    const auto oracle = oracle_rule(rule.weight, D);
    const auto powers = [D](double t) {
        std::vector<double> p(static_cast<std::size_t>(D) + 1, 1.0);
        for (int k = 1; k <= D; ++k)
            p[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k - 1)] * t;
        return p;
    };
    // exact[i][j], quad[i][j], scale[i][j] for i + j <= D
    const auto side = static_cast<std::size_t>(D) + 1;
    std::vector<double> exact(side * side, 0.0), exact_abs(side * side, 0.0), quad(side * side, 0.0),
        scale(side * side, 0.0);
    for (std::size_t q = 0; q < oracle.points.size(); ++q)
    {
        const auto px = powers(oracle.points[q].x), py = powers(oracle.points[q].y);
        for (std::size_t i = 0; i < side; ++i)
            for (std::size_t j = 0; i + j < side; ++j)
            {
                exact[i * side + j] += oracle.weights[q] * px[i] * py[j];
                exact_abs[i * side + j] += std::abs(oracle.weights[q] * px[i] * py[j]);
            }
    }
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    {
        const auto px = powers(rule.nodes.points[k].x), py = powers(rule.nodes.points[k].y);
        for (std::size_t i = 0; i < side; ++i)
            for (std::size_t j = 0; i + j < side; ++j)
            {
                const double v = rule.lambdas[k] * px[i] * py[j];
                quad[i * side + j] += v;
                scale[i * side + j] += std::abs(v);
            }
    }
    for (int d = 0; d <= D; ++d)
        for (int i = d; i >= 0; --i)
        {
            const int j = d - i;
            const auto idx = static_cast<std::size_t>(i) * side + static_cast<std::size_t>(j);
            const double denom = std::max({exact_abs[idx], scale[idx], 1e-300});
            const double err = std::abs(quad[idx] - exact[idx]) / denom;
            if (d <= rule.degree)
                report.max_relative_error = std::max(report.max_relative_error, err);
            if (!report.first_failing_degree && !(err <= tolerance))
            {
                report.first_failing_degree = d;
                report.failing_i = i;
                report.failing_j = j;
            }
        }
    report.pass = !report.first_failing_degree || *report.first_failing_degree > rule.degree;
    report.exact_beyond_declared = !report.first_failing_degree;
    return report;
}

LowerBounds lower_bounds(const WeightSpec& w, int n)
{
    if (n < 1)
        throw UnsupportedError("lower_bounds: n must be >= 1");
    LowerBounds b;
    b.dim_bound = dim_polynomials(n - 1);
    const auto t = three_term(w, n - 1);
    const Eigen::MatrixXd C = t.A1 * t.A2.transpose() - t.A2 * t.A1.transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C);
    const auto& s = svd.singularValues();
    long rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(0) > 0.0 && s(i) > 1e-10 * s(0))
            ++rank;
    b.rank_bound = b.dim_bound + rank / 2;
    if (is_centrally_symmetric(w))
        b.moeller_bound = moeller_count(n);
    return b;
}

FamilySetup family_setup(NodeFamily f, int n, double alpha, double beta)
{
    FamilySetup s;
    s.nodes = make_nodes(f, n, alpha, beta);
    switch (s.nodes.family)
    {
    case NodeFamily::GaussU:
        s.weight = WeightSpec::cheb2();
        s.basis = product_basis(s.weight);
        s.spec = KernelStarSpec::gaussian(n, RuleConfiguration::GaussianEven);
        break;
    case NodeFamily::MinTEven:
    case NodeFamily::NearMinTOdd: {
        s.weight = WeightSpec::cheb1();
        s.basis = product_basis(s.weight);
        const auto c =
            s.nodes.family == NodeFamily::MinTEven ? RuleConfiguration::Minimal : RuleConfiguration::NearMinimal;
        s.spec = KernelStarSpec::from_vanishing(*s.basis, n, c, vanishing_polynomials(s.nodes.family, n));
        break;
    }
    case NodeFamily::Padua:
        s.weight = WeightSpec::cheb1();
        s.basis = product_basis(s.weight);
        break;
    case NodeFamily::GenChebEven:
    case NodeFamily::GenChebOdd:
        s.weight = WeightSpec::generalized_chebyshev(alpha, beta, -0.5);
        s.basis = std::make_shared<GeneralizedChebyshevBasis>(s.weight);
        s.spec = generalized_kernel_spec(n);
        break;
    case NodeFamily::Discovered:
        throw UnsupportedError("family_setup: discovered rules have no explicit family");
    }
    if (s.spec && s.spec->sigma > 0)
    {
        const double off = s.spec->calibrate(*s.basis, s.nodes.points);
        if (off > 1e-8)
            throw NumericalError("family_setup: kernel is not cardinal on the nodes (relative off-diagonal " +
                                 std::to_string(off) + ")");
    }
    s.degree = s.spec ? s.spec->degree() : 2 * n - 1;
    return s;
}

CubatureRule family_rule(const FamilySetup& setup)
{
    if (setup.spec)
        return weights_from_kernel(setup.nodes, *setup.spec, *setup.basis);
    return weights_from_vandermonde(setup.nodes, setup.weight, setup.degree);
}

CubatureRule family_rule(NodeFamily f, int n, double alpha, double beta)
{
    return family_rule(family_setup(f, n, alpha, beta));
}

} // namespace cubasquare
