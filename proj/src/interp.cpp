#include "cubasquare/interp.hpp"

#include "cubasquare/univariate.hpp"

#include <algorithm>
#include <cmath>

namespace cubasquare
{

Interpolant::Interpolant(std::vector<Point> nodes, std::vector<double> values)
    : nodes_(std::move(nodes)), values_(std::move(values))
{
    if (nodes_.size() != values_.size())
        throw UnsupportedError("interpolant: " + std::to_string(values_.size()) + " values for " +
                               std::to_string(nodes_.size()) + " nodes");
}

double Interpolant::operator()(Point p) const
{
    std::vector<double> l(nodes_.size());
    cardinal(p, l);
    double sum = 0.0;
    for (std::size_t k = 0; k < l.size(); ++k)
        sum += values_[k] * l[k];
    return sum;
}

// ---------------------------------------------------------------------------------------------

KernelInterpolant::KernelInterpolant(const NodeSet& nodes, KernelStarSpec spec,
                                     std::shared_ptr<const OrthoBasis2D> basis, std::vector<double> values)
    : Interpolant(nodes.points, std::move(values)), spec_(std::move(spec)), basis_(std::move(basis))
{
    if (static_cast<long>(nodes.size()) != spec_.expected_nodes())
        throw NumericalError("kernel interpolant: node count does not match the kernel split");
    const Eigen::MatrixXd F = features(nodes.points); // N x L
    scaled_ = F.transpose();
    for (Eigen::Index k = 0; k < scaled_.cols(); ++k)
    {
        const double d = scaled_.col(k).squaredNorm();
        if (!(d > 0.0))
            throw NumericalError("kernel interpolant: nonpositive kernel diagonal");
        scaled_.col(k) /= d;
    }
}

Eigen::MatrixXd KernelInterpolant::features(std::span<const Point> points) const
{
    const auto len = static_cast<Eigen::Index>(spec_.expected_nodes());
    Eigen::MatrixXd F(static_cast<Eigen::Index>(points.size()), len);
    std::vector<double> row(static_cast<std::size_t>(len));
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        kernel_star_features(spec_, *basis_, points[i], row);
        for (Eigen::Index j = 0; j < len; ++j)
            F(static_cast<Eigen::Index>(i), j) = row[static_cast<std::size_t>(j)];
    }
    return F;
}

void KernelInterpolant::cardinal(Point p, std::span<double> out) const
{
    const Eigen::MatrixXd row = features(std::span<const Point>(&p, 1)) * scaled_;
    for (Eigen::Index k = 0; k < row.cols(); ++k)
        out[static_cast<std::size_t>(k)] = row(0, k);
}

Eigen::MatrixXd KernelInterpolant::cardinal_matrix(std::span<const Point> points) const
{
    return features(points) * scaled_;
}

// ---------------------------------------------------------------------------------------------

namespace
{

int padua_degree(std::size_t count)
{
    for (int n = 1; dim_polynomials(n) <= static_cast<long>(count); ++n)
        if (dim_polynomials(n) == static_cast<long>(count))
            return n;
    throw UnsupportedError("Padua interpolant: node count is not dim Pi_n");
}

void chebyshev_row(int n, Point p, std::span<double> out)
{
    std::vector<double> tx(static_cast<std::size_t>(n) + 1), ty(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
    {
        tx[static_cast<std::size_t>(k)] = chebyshev_t(k, p.x);
        ty[static_cast<std::size_t>(k)] = chebyshev_t(k, p.y);
    }
    std::size_t r = 0;
    for (int s = 0; s <= n; ++s)
        for (int b = 0; b <= s; ++b)
            out[r++] = tx[static_cast<std::size_t>(s - b)] * ty[static_cast<std::size_t>(b)];
}

Eigen::MatrixXd chebyshev_matrix(int n, std::span<const Point> points)
{
    const auto dim = static_cast<Eigen::Index>(dim_polynomials(n));
    Eigen::MatrixXd V(static_cast<Eigen::Index>(points.size()), dim);
    std::vector<double> row(static_cast<std::size_t>(dim));
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        chebyshev_row(n, points[i], row);
        for (Eigen::Index j = 0; j < dim; ++j)
            V(static_cast<Eigen::Index>(i), j) = row[static_cast<std::size_t>(j)];
    }
    return V;
}

} // namespace

PaduaInterpolant::PaduaInterpolant(const NodeSet& nodes, std::vector<double> values)
    : Interpolant(nodes.points, std::move(values)), n_(padua_degree(nodes.size()))
{
    const Eigen::MatrixXd V = chebyshev_matrix(n_, nodes.points);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(V);
    const auto& s = svd.singularValues();
    condition_ = s(0) / s(s.size() - 1);
    if (!std::isfinite(condition_) || condition_ > 1e12)
        throw NumericalError("Padua collocation matrix is singular");
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(V);
    inverse_ = lu.inverse();
    const Eigen::Map<const Eigen::VectorXd> f(this->values().data(), static_cast<Eigen::Index>(this->values().size()));
    coefficients_ = lu.solve(f);
}

void PaduaInterpolant::cardinal(Point p, std::span<double> out) const
{
    const Eigen::MatrixXd row = chebyshev_matrix(n_, std::span<const Point>(&p, 1)) * inverse_;
    for (Eigen::Index k = 0; k < row.cols(); ++k)
        out[static_cast<std::size_t>(k)] = row(0, k);
}

Eigen::MatrixXd PaduaInterpolant::cardinal_matrix(std::span<const Point> points) const
{
    return chebyshev_matrix(n_, points) * inverse_;
}

// ---------------------------------------------------------------------------------------------

std::unique_ptr<KernelInterpolant> interpolate_kernel(const NodeSet& nodes, const KernelStarSpec& spec,
                                                      std::shared_ptr<const OrthoBasis2D> basis,
                                                      std::vector<double> f_values)
{
    return std::make_unique<KernelInterpolant>(nodes, spec, std::move(basis), std::move(f_values));
}

std::unique_ptr<PaduaInterpolant> interpolate_padua(int n, std::vector<double> f_values)
{
    return std::make_unique<PaduaInterpolant>(padua_points(n), std::move(f_values));
}

std::unique_ptr<Interpolant> make_interpolant(const FamilySetup& setup, const std::function<double(Point)>& f)
{
    std::vector<double> values;
    values.reserve(setup.nodes.size());
    for (const Point z : setup.nodes.points)
        values.push_back(f(z));
    if (!setup.spec)
        return std::make_unique<PaduaInterpolant>(setup.nodes, std::move(values));
    return std::make_unique<KernelInterpolant>(setup.nodes, *setup.spec, setup.basis, std::move(values));
}

std::vector<Point> chebyshev_grid(int resolution)
{
    if (resolution < 1)
        throw UnsupportedError("grid resolution must be positive");
    std::vector<double> t(static_cast<std::size_t>(resolution) + 1);
    for (int i = 0; i <= resolution; ++i)
        t[static_cast<std::size_t>(i)] = std::cos(i * pi / resolution);
    std::vector<Point> grid;
    grid.reserve(t.size() * t.size());
    for (const double x : t)
        for (const double y : t)
            grid.push_back({x, y});
    return grid;
}

double lebesgue_constant(const Interpolant& interp, int resolution)
{
    if (resolution < 64)
        throw UnsupportedError("lebesgue_constant: resolution must be at least 64");
    const auto grid = chebyshev_grid(resolution);
    constexpr std::size_t chunk = 2048;
    double best = 0.0;
    for (std::size_t start = 0; start < grid.size(); start += chunk)
    {
        const std::size_t len = std::min(chunk, grid.size() - start);
        const Eigen::MatrixXd L = interp.cardinal_matrix(std::span<const Point>(grid.data() + start, len));
        best = std::max(best, L.cwiseAbs().rowwise().sum().maxCoeff());
    }
    return best;
}

double lebesgue_constant(NodeFamily f, int n, int resolution, double alpha, double beta)
{
    const auto setup = family_setup(f, n, alpha, beta);
    const auto interp = make_interpolant(setup, [](Point) { return 0.0; });
    return lebesgue_constant(*interp, resolution);
}

std::vector<ConvergenceRow> convergence_report(NodeFamily f, const std::function<double(Point)>& fn,
                                               const std::vector<int>& n_list, ErrorNorm norm, double alpha,
                                               double beta)
{
    std::vector<Point> grid;
    std::vector<double> weights;
    std::vector<ConvergenceRow> rows;
    for (const int n : n_list)
    {
        const auto setup = family_setup(f, n, alpha, beta);
        if (grid.empty())
        {
            if (norm == ErrorNorm::Sup)
            {
                constexpr int cells = 200;
                for (int i = 0; i <= cells; ++i)
                    for (int j = 0; j <= cells; ++j)
                        grid.push_back({-1.0 + 2.0 * i / cells, -1.0 + 2.0 * j / cells});
            }
            else
            {
                const auto rule = oracle_rule(setup.weight, 120);
                grid = rule.points;
                weights = rule.weights;
            }
        }
        const auto interp = make_interpolant(setup, fn);
        const Eigen::MatrixXd L = interp->cardinal_matrix(grid);
        const Eigen::Map<const Eigen::VectorXd> vals(interp->values().data(),
                                                     static_cast<Eigen::Index>(interp->values().size()));
        const Eigen::VectorXd approx = L * vals;
        double err = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const double e = std::abs(approx(static_cast<Eigen::Index>(i)) - fn(grid[i]));
            if (norm == ErrorNorm::Sup)
                err = std::max(err, e);
            else
                err += weights[i] * e * e;
        }
        if (norm == ErrorNorm::L2)
            err = std::sqrt(err);
        ConvergenceRow row{n, err, rows.empty() ? 0.0 : err / rows.back().error};
        rows.push_back(row);
    }
    return rows;
}

} // namespace cubasquare
