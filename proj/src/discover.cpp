#include "cubasquare/discover.hpp"

#include "cubasquare/levmar.hpp"
#include "cubasquare/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace cubasquare
{

double legendre_a(int k)
{
    return (k + 1.0) / std::sqrt((2.0 * k + 1.0) * (2.0 * k + 3.0));
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> legendre_A_matrices(int n)
{
    Eigen::MatrixXd A1 = Eigen::MatrixXd::Zero(n + 1, n + 2);
    Eigen::MatrixXd A2 = Eigen::MatrixXd::Zero(n + 1, n + 2);
    for (int k = 0; k <= n; ++k)
    {
        A1(k, k) = legendre_a(n - k);
        A2(k, k + 1) = legendre_a(k);
    }
    return {A1, A2};
}

double gamma_k(int k)
{
    double c = 1.0; // (2k)! / (2^k k!^2) via the ratio (2j-1)/j
    for (int j = 1; j <= k; ++j)
        c *= (2.0 * j - 1.0) / j;
    return c * std::sqrt(2.0 * k + 1.0);
}

Eigen::VectorXd scaling_diagonal(int n)
{
    Eigen::VectorXd g(n + 1);
    for (int k = 0; k <= n; ++k)
        g(k) = gamma_k(n - k) * gamma_k(k);
    return g;
}

Eigen::MatrixXd HankelParam::matrix() const
{
    Eigen::MatrixXd H(rows(), cols());
    for (int i = 0; i < rows(); ++i)
        for (int j = 0; j < cols(); ++j)
            H(i, j) = h[static_cast<std::size_t>(i + j)];
    return H;
}

HankelParam make_hankel(SystemKind kind, int n, std::vector<double> h)
{
    HankelParam H{kind, n, std::move(h)};
    if (n < 1 || static_cast<int>(H.h.size()) != H.rows() + H.cols() - 1)
        throw UnsupportedError("Hankel parameter: expected " + std::to_string(H.rows() + H.cols() - 1) +
                               " entries for n = " + std::to_string(n));
    return H;
}

namespace
{

Eigen::MatrixXd skew_M(int n) // A1^t A2 - A2^t A1 with A = A_{n-1}
{
    const auto [A1, A2] = legendre_A_matrices(n - 1);
    return A1.transpose() * A2 - A2.transpose() * A1;
}

Eigen::MatrixXd skew_C(int n) // A1 A2^t - A2 A1^t with A = A_{n-1}
{
    const auto [A1, A2] = legendre_A_matrices(n - 1);
    return A1 * A2.transpose() - A2 * A1.transpose();
}

Eigen::VectorXd strict_upper(const Eigen::MatrixXd& X)
{
    const auto n = X.rows();
    Eigen::VectorXd out(n * (n - 1) / 2);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            out(r++) = X(i, j);
    return out;
}

Eigen::VectorXd upper_with_diagonal(const Eigen::MatrixXd& X)
{
    const auto n = X.rows();
    Eigen::VectorXd out(n * (n + 1) / 2);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j)
            out(r++) = X(i, j);
    return out;
}

// G_left E_s G_right with E_s the indicator of the anti-diagonal i + j = s.
Eigen::MatrixXd scaled_indicator(const Eigen::VectorXd& gl, const Eigen::VectorXd& gr, int s)
{
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(gl.size(), gr.size());
    for (Eigen::Index i = 0; i < gl.size(); ++i)
    {
        const Eigen::Index j = s - i;
        if (j >= 0 && j < gr.size())
            D(i, j) = gl(i) * gr(j);
    }
    return D;
}

} // namespace

Eigen::MatrixXd even_gamma(const HankelParam& H)
{
    return scaling_diagonal(H.n).asDiagonal() * H.matrix() * scaling_diagonal(H.n - 1).asDiagonal();
}

Eigen::VectorXd even_system_residual(int n, const HankelParam& H)
{
    if (H.kind != SystemKind::Even || H.n != n)
        throw UnsupportedError("even_system_residual: Hankel parameter has the wrong shape");
    const Eigen::MatrixXd G = even_gamma(H);
    return strict_upper(G.transpose() * skew_M(n) * G - skew_C(n));
}

Eigen::MatrixXd odd_W(const HankelParam& H)
{
    const Eigen::VectorXd g = scaling_diagonal(H.n);
    return Eigen::MatrixXd::Identity(H.n + 1, H.n + 1) - g.asDiagonal() * H.matrix() * g.asDiagonal();
}

Eigen::VectorXd odd_system_residual(int n, const HankelParam& H)
{
    if (H.kind != SystemKind::Odd || H.n != n)
        throw UnsupportedError("odd_system_residual: Hankel parameter has the wrong shape");
    const Eigen::MatrixXd W = odd_W(H);
    return strict_upper(W * skew_M(n) * W);
}

double odd_parameterization_defect(const HankelParam& H)
{
    const auto [A1, A2] = legendre_A_matrices(H.n - 1);
    const Eigen::MatrixXd D = odd_W(H) - Eigen::MatrixXd::Identity(H.n + 1, H.n + 1);
    const Eigen::MatrixXd X = A1 * D * A2.transpose();
    return (X - X.transpose()).cwiseAbs().maxCoeff();
}

double even_parameterization_defect(const HankelParam& H)
{
    const auto [A1, A2] = legendre_A_matrices(H.n - 1);
    const Eigen::MatrixXd G = even_gamma(H);
    const Eigen::MatrixXd X1 = A1 * G, X2 = A2 * G;
    return std::max((X1 - X1.transpose()).cwiseAbs().maxCoeff(), (X2 - X2.transpose()).cwiseAbs().maxCoeff());
}

namespace
{

// Jacobian of the independent residual entries with respect to all Hankel entries (unscaled).
Eigen::MatrixXd residual_jacobian(const HankelParam& H)
{
    const int n = H.n;
    const Eigen::MatrixXd M = skew_M(n);
    const auto count = static_cast<Eigen::Index>(H.h.size());
    Eigen::MatrixXd J;
    if (H.kind == SystemKind::Even)
    {
        const Eigen::VectorXd gn = scaling_diagonal(n), gm = scaling_diagonal(n - 1);
        const Eigen::MatrixXd MG = M * even_gamma(H);
        J.resize(n * (n - 1) / 2, count);
        for (Eigen::Index s = 0; s < count; ++s)
        {
            const Eigen::MatrixXd Y = scaled_indicator(gn, gm, static_cast<int>(s)).transpose() * MG;
            J.col(s) = strict_upper(Y - Y.transpose());
        }
    }
    else
    {
        const Eigen::VectorXd g = scaling_diagonal(n);
        const Eigen::MatrixXd W = odd_W(H);
        J.resize((n + 1) * n / 2, count);
        for (Eigen::Index s = 0; s < count; ++s)
        {
            const Eigen::MatrixXd dW = -scaled_indicator(g, g, static_cast<int>(s));
            J.col(s) = strict_upper(dW * M * W + W * M * dW);
        }
    }
    return J;
}

} // namespace

int solution_set_dimension(const HankelParam& H)
{
    const auto numerical_rank = [](const Eigen::MatrixXd& J) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) > 1e-8 * sv(0))
                ++rank;
        return rank;
    };
    const auto hcount = static_cast<int>(H.h.size());
    if (H.kind == SystemKind::Even)
        return hcount - numerical_rank(residual_jacobian(H));

    // W M W = 0 is degenerate at rank-deficient W; use the factored equations in (h, V) and
    // remove the rotations V -> V Q.
    const auto sol = odd_solution_from_hankel(H);
    if (!sol)
        throw NumericalError("solution_set_dimension: not a positive semidefinite solution");
    const int n = H.n, r = n / 2;
    const Eigen::VectorXd g = scaling_diagonal(n);
    const Eigen::MatrixXd M = skew_M(n);
    const Eigen::MatrixXd& V = sol->V;
    const Eigen::Index rows = (n + 1) * (n + 2) / 2 + r * (r - 1) / 2;
    const Eigen::Index split = (n + 1) * (n + 2) / 2;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(rows, hcount + (n + 1) * r);
    for (int s = 0; s < hcount; ++s)
        J.col(s).head(split) = -upper_with_diagonal(scaled_indicator(g, g, s));
    for (int b = 0; b < r; ++b)
        for (int a = 0; a <= n; ++a)
        {
            Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n + 1, r);
            E(a, b) = 1.0;
            const Eigen::Index col = hcount + static_cast<Eigen::Index>(b) * (n + 1) + a;
            J.col(col).head(split) = -upper_with_diagonal(E * V.transpose() + V * E.transpose());
            if (r > 1)
                J.col(col).tail(rows - split) = strict_upper(E.transpose() * M * V + V.transpose() * M * E);
        }
    return static_cast<int>(J.cols()) - numerical_rank(J) - r * (r - 1) / 2;
}

// ---------------------------------------------------------------------------------------------
// Symmetries

std::vector<std::vector<double>> symmetry_orbit(const HankelParam& H)
{
    const int last = static_cast<int>(H.h.size()) - 1;
    const auto flip = [](const std::vector<double>& h, int sign) {
        std::vector<double> out(h);
        for (std::size_t i = 1; i < out.size(); i += 2)
            out[i] = -out[i];
        if (sign < 0)
            for (auto& v : out)
                v = -v;
        return out;
    };
    const auto reverse = [last](const std::vector<double>& h) {
        std::vector<double> out(h.size());
        for (int i = 0; i <= last; ++i)
            out[static_cast<std::size_t>(i)] = h[static_cast<std::size_t>(last - i)];
        return out;
    };
    std::vector<std::vector<double>> orbit{H.h};
    // The even system also admits h_i -> -(-1)^i h_i (flip of the other coordinate).
    const bool even = H.kind == SystemKind::Even;
    for (std::size_t k = 0; k < orbit.size(); ++k)
    {
        std::vector<std::vector<double>> images{flip(orbit[k], 1), reverse(orbit[k])};
        if (even)
            images.push_back(flip(orbit[k], -1));
        for (auto& img : images)
        {
            const bool seen = std::any_of(orbit.begin(), orbit.end(), [&](const std::vector<double>& o) { return o == img; });
            if (!seen)
                orbit.push_back(std::move(img));
        }
        if (orbit.size() > 16)
            break;
    }
    return orbit;
}

double symmetry_distance(const HankelParam& a, const HankelParam& b, HankelParam* aligned)
{
    if (a.kind != b.kind || a.n != b.n)
        return INFINITY;
    double best = INFINITY;
    for (const auto& img : symmetry_orbit(a))
    {
        double d = 0.0;
        for (std::size_t i = 0; i < img.size(); ++i)
            d = std::max(d, std::abs(img[i] - b.h[i]));
        if (d < best)
        {
            best = d;
            if (aligned)
                *aligned = HankelParam{a.kind, a.n, img};
        }
    }
    return best;
}

namespace
{

double max_abs(const std::vector<double>& h)
{
    double m = 0.0;
    for (const double v : h)
        m = std::max(m, std::abs(v));
    return m;
}

// Lexicographically smallest image after rounding, for deterministic output.
HankelParam canonical(const HankelParam& H)
{
    const double unit = std::max(max_abs(H.h), 1e-300) * 1e-8;
    const auto key = [unit](const std::vector<double>& h) {
        std::vector<double> k(h.size());
        for (std::size_t i = 0; i < h.size(); ++i)
            k[i] = std::round(h[i] / unit);
        return k;
    };
    auto orbit = symmetry_orbit(H);
    const auto best = std::min_element(orbit.begin(), orbit.end(),
                                       [&](const auto& x, const auto& y) { return key(x) < key(y); });
    return HankelParam{H.kind, H.n, *best};
}

bool same_solution(const HankelParam& a, const HankelParam& b)
{
    return symmetry_distance(a, b) <= 1e-6 * std::max(max_abs(a.h), max_abs(b.h));
}

void add_unique(std::vector<HankelParam>& list, const HankelParam& H)
{
    for (const auto& existing : list)
        if (same_solution(existing, H))
            return;
    list.push_back(canonical(H));
}

void sort_solutions(std::vector<HankelParam>& list)
{
    std::sort(list.begin(), list.end(), [](const HankelParam& a, const HankelParam& b) { return a.h < b.h; });
}

std::vector<int> free_indices(int count, bool axis_symmetric)
{
    std::vector<int> idx;
    for (int i = 0; i < count; ++i)
        if (!axis_symmetric || i % 2 == 0)
            idx.push_back(i);
    return idx;
}

std::mt19937_64 start_engine(std::uint64_t seed, int start)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(start)};
    return std::mt19937_64(seq);
}

} // namespace

// ---------------------------------------------------------------------------------------------
// Even system

std::vector<HankelParam> solve_even_system(int n, const SolverOptions& options, int* converged_starts)
{
    if (converged_starts)
        *converged_starts = 0;
    if (n < 2)
        throw UnsupportedError("solve_even_system: n must be >= 2");
    const Eigen::VectorXd gn = scaling_diagonal(n), gm = scaling_diagonal(n - 1);
    const Eigen::MatrixXd M = skew_M(n), C = skew_C(n);
    const double scale = 1.0 / (gn.maxCoeff() * gm.maxCoeff());
    const auto idx = free_indices(2 * n, options.axis_symmetric);
    const auto free = static_cast<Eigen::Index>(idx.size());
    std::vector<Eigen::MatrixXd> D;
    for (const int s : idx)
        D.push_back(scale * scaled_indicator(gn, gm, s));

    const auto hankel_of = [&](const Eigen::VectorXd& x) {
        std::vector<double> h(static_cast<std::size_t>(2 * n), 0.0);
        for (Eigen::Index i = 0; i < free; ++i)
            h[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = scale * x(i);
        return HankelParam{SystemKind::Even, n, h};
    };
    const ResidualFunction f = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
        const Eigen::MatrixXd G = even_gamma(hankel_of(x));
        const Eigen::MatrixXd MG = M * G;
        r = strict_upper(G.transpose() * MG - C);
        J.resize(r.size(), free);
        for (Eigen::Index s = 0; s < free; ++s)
        {
            const Eigen::MatrixXd Y = D[static_cast<std::size_t>(s)].transpose() * MG;
            J.col(s) = strict_upper(Y - Y.transpose());
        }
    };

    LevMarOptions lm;
    lm.max_iterations = options.max_iterations;
    std::vector<HankelParam> found;
    for (int start = 0; start < options.seeds; ++start)
    {
        auto engine = start_engine(options.rng_seed, start);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Eigen::VectorXd x0(free);
        for (Eigen::Index i = 0; i < free; ++i)
            x0(i) = u(engine);
        const auto res = levenberg_marquardt(f, x0, lm);
        if (res.residual > options.tolerance)
            continue;
        if (converged_starts)
            ++*converged_starts;
        add_unique(found, hankel_of(res.x));
    }
    sort_solutions(found);
    return found;
}

// ---------------------------------------------------------------------------------------------
// Odd system

std::optional<OddSystemSolution> odd_solution_from_hankel(const HankelParam& H)
{
    const int n = H.n, r = n / 2;
    OddSystemSolution s;
    s.n = n;
    s.H = H;
    s.W = odd_W(H);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.W);
    if (eig.info() != Eigen::Success)
        return std::nullopt;
    s.eigenvalues = eig.eigenvalues(); // ascending
    const auto& ev = s.eigenvalues;
    if (ev(0) < -1e-9)
        return std::nullopt;
    int positive = 0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev(i) > 1e-8)
            ++positive;
    if (positive != r)
        return std::nullopt;
    const Eigen::Index k = n + 1 - r; // number of zero eigenvalues
    if (r > 0 && ev(k) < 100.0 * std::max(std::abs(ev(k - 1)), 1e-300))
        return std::nullopt;
    s.V = eig.eigenvectors().rightCols(r) * ev.tail(r).cwiseSqrt().asDiagonal();
    s.U = eig.eigenvectors().leftCols(k);
    if ((s.V * s.V.transpose() - s.W).cwiseAbs().maxCoeff() > 1e-9)
        return std::nullopt;
    if (r > 0 && (s.U.transpose() * s.V).cwiseAbs().maxCoeff() > 1e-10)
        return std::nullopt;
    return s;
}

OddSolveResult odd_system_solve(int n, const SolverOptions& options, OddFormulation formulation)
{
    if (n < 2)
        throw UnsupportedError("odd_system_solve: n must be >= 2");
    const int r = n / 2;
    const Eigen::VectorXd g = scaling_diagonal(n);
    const Eigen::MatrixXd M = skew_M(n);
    const double scale = 1.0 / (g.maxCoeff() * g.maxCoeff());
    const auto idx = free_indices(2 * n + 1, options.axis_symmetric);
    const auto hfree = static_cast<Eigen::Index>(idx.size());
    const bool factored = formulation == OddFormulation::Factored;
    const Eigen::Index vcount = factored ? static_cast<Eigen::Index>(n + 1) * r : 0;
    std::vector<Eigen::MatrixXd> D; // dW / dx_s
    for (const int s : idx)
        D.push_back(-scale * scaled_indicator(g, g, s));

    const auto hankel_of = [&](const Eigen::VectorXd& x) {
        std::vector<double> h(static_cast<std::size_t>(2 * n + 1), 0.0);
        for (Eigen::Index i = 0; i < hfree; ++i)
            h[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = scale * x(i);
        return HankelParam{SystemKind::Odd, n, h};
    };
    const auto V_of = [&](const Eigen::VectorXd& x) {
        return Eigen::Map<const Eigen::MatrixXd>(x.data() + hfree, n + 1, r);
    };

    const ResidualFunction f_factored = [&](const Eigen::VectorXd& x, Eigen::VectorXd& res, Eigen::MatrixXd& J) {
        const Eigen::MatrixXd W = odd_W(hankel_of(x));
        const Eigen::MatrixXd V = V_of(x);
        const Eigen::MatrixXd MV = M * V;
        const Eigen::VectorXd r1 = upper_with_diagonal(W - V * V.transpose());
        const Eigen::VectorXd r2 = strict_upper(V.transpose() * MV);
        res.resize(r1.size() + r2.size());
        res << r1, r2;
        J = Eigen::MatrixXd::Zero(res.size(), hfree + vcount);
        for (Eigen::Index s = 0; s < hfree; ++s)
            J.col(s).head(r1.size()) = upper_with_diagonal(D[static_cast<std::size_t>(s)]);
        for (int b = 0; b < r; ++b)
            for (int a = 0; a <= n; ++a)
            {
                Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n + 1, r);
                E(a, b) = 1.0;
                const Eigen::MatrixXd dVV = E * V.transpose() + V * E.transpose();
                const Eigen::MatrixXd dS = E.transpose() * MV + V.transpose() * M * E;
                const Eigen::Index col = hfree + static_cast<Eigen::Index>(b) * (n + 1) + a;
                J.col(col).head(r1.size()) = -upper_with_diagonal(dVV);
                J.col(col).tail(r2.size()) = strict_upper(dS);
            }
    };
    const ResidualFunction f_direct = [&](const Eigen::VectorXd& x, Eigen::VectorXd& res, Eigen::MatrixXd& J) {
        const Eigen::MatrixXd W = odd_W(hankel_of(x));
        const Eigen::MatrixXd MW = M * W;
        res = strict_upper(W * MW);
        J.resize(res.size(), hfree);
        for (Eigen::Index s = 0; s < hfree; ++s)
        {
            const Eigen::MatrixXd& dW = D[static_cast<std::size_t>(s)];
            J.col(s) = strict_upper(dW * MW + W * M * dW);
        }
    };

    LevMarOptions lm;
    lm.max_iterations = options.max_iterations;
    OddSolveResult out;
    std::vector<HankelParam> good;
    for (int start = 0; start < options.seeds; ++start)
    {
        auto engine = start_engine(options.rng_seed, start);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Eigen::VectorXd x0(hfree + vcount);
        for (Eigen::Index i = 0; i < x0.size(); ++i)
            x0(i) = u(engine);
        const auto res = levenberg_marquardt(factored ? f_factored : f_direct, x0, lm);
        if (res.residual > options.tolerance)
            continue;
        ++out.converged_starts;
        const auto H = hankel_of(res.x);
        if (odd_solution_from_hankel(H))
            add_unique(good, H);
        else
            add_unique(out.algebraic_only, H);
    }
    sort_solutions(good);
    sort_solutions(out.algebraic_only);
    for (const auto& H : good)
        out.solutions.push_back(*odd_solution_from_hankel(H));
    return out;
}

// ---------------------------------------------------------------------------------------------
// Polynomial systems and common zeros

namespace
{

// Orthonormal Legendre values and derivatives, k = 0..n.
void legendre_with_derivatives(int n, double x, std::vector<double>& p, std::vector<double>& dp)
{
    p.assign(static_cast<std::size_t>(n) + 1, 0.0);
    dp.assign(static_cast<std::size_t>(n) + 1, 0.0);
    const JacobiRecurrence rec{0.0, 0.0};
    p[0] = 1.0;
    for (int k = 0; k < n; ++k)
    {
        const auto kk = static_cast<std::size_t>(k);
        const double bk = k == 0 ? 0.0 : rec.offdiagonal(k);
        const double bn = rec.offdiagonal(k + 1);
        const double pm = k == 0 ? 0.0 : p[kk - 1], dpm = k == 0 ? 0.0 : dp[kk - 1];
        p[kk + 1] = (x * p[kk] - bk * pm) / bn;
        dp[kk + 1] = (x * dp[kk] + p[kk] - bk * dpm) / bn;
    }
}

struct LegendreValues
{
    Eigen::VectorXd v, dx, dy;
};

LegendreValues product_legendre(int n, Point z)
{
    std::vector<double> px, dpx, py, dpy;
    legendre_with_derivatives(n, z.x, px, dpx);
    legendre_with_derivatives(n, z.y, py, dpy);
    LegendreValues out{Eigen::VectorXd(n + 1), Eigen::VectorXd(n + 1), Eigen::VectorXd(n + 1)};
    for (int k = 0; k <= n; ++k)
    {
        const auto a = static_cast<std::size_t>(n - k), b = static_cast<std::size_t>(k);
        out.v(k) = px[a] * py[b];
        out.dx(k) = dpx[a] * py[b];
        out.dy(k) = px[a] * dpy[b];
    }
    return out;
}

} // namespace

Eigen::VectorXd LegendreSystem::evaluate(Point p) const
{
    Eigen::VectorXd f = top * product_legendre(n, p).v;
    if (lower.size() > 0)
        f += lower * product_legendre(n - 1, p).v;
    return f;
}

Eigen::MatrixXd LegendreSystem::jacobian(Point p) const
{
    const auto a = product_legendre(n, p);
    Eigen::MatrixXd J(top.rows(), 2);
    J.col(0) = top * a.dx;
    J.col(1) = top * a.dy;
    if (lower.size() > 0)
    {
        const auto b = product_legendre(n - 1, p);
        J.col(0) += lower * b.dx;
        J.col(1) += lower * b.dy;
    }
    return J;
}

std::vector<Polynomial2D> LegendreSystem::polynomials() const
{
    std::vector<Polynomial2D> out;
    for (int i = 0; i < size(); ++i)
        out.push_back([sys = *this, i](Point p) { return sys.evaluate(p)(i); });
    return out;
}

LegendreSystem orthogonal_polys_from_U(int n, const Eigen::MatrixXd& U)
{
    if (U.rows() != n + 1)
        throw UnsupportedError("orthogonal_polys_from_U: U must have n+1 rows");
    return LegendreSystem{n, U.transpose(), Eigen::MatrixXd(0, 0)};
}

LegendreSystem even_system_polynomials(const HankelParam& H)
{
    return LegendreSystem{H.n, Eigen::MatrixXd::Identity(H.n + 1, H.n + 1), even_gamma(H)};
}

NodeSet common_zeros(const LegendreSystem& system, int expected_count, int grid)
{
    constexpr double box = 1.3;
    constexpr double accept = 1e-10;
    std::vector<Point> found;
    for (int i = 0; i < grid; ++i)
        for (int j = 0; j < grid; ++j)
        {
            Point z{-box + 2.0 * box * i / (grid - 1), -box + 2.0 * box * j / (grid - 1)};
            for (int it = 0; it < 60; ++it)
            {
                const Eigen::VectorXd F = system.evaluate(z);
                const Eigen::MatrixXd J = system.jacobian(z);
                const Eigen::Vector2d step = J.colPivHouseholderQr().solve(-F);
                if (!step.allFinite())
                    break;
                z.x += step(0);
                z.y += step(1);
                if (std::max(std::abs(z.x), std::abs(z.y)) > 3.0)
                    break;
                if (step.cwiseAbs().maxCoeff() < 1e-15)
                    break;
            }
            if (std::max(std::abs(z.x), std::abs(z.y)) > 2.0)
                continue;
            if (system.evaluate(z).cwiseAbs().maxCoeff() > accept)
                continue;
            const bool seen = std::any_of(found.begin(), found.end(),
                                          [&](Point p) { return max_norm_distance(p, z) <= 1e-9; });
            if (!seen)
                found.push_back(z);
        }
    NodeSet set;
    set.family = NodeFamily::Discovered;
    set.n = system.n;
    set.expected_count = expected_count;
    set.variant = "common-zeros";
    set.points = canonical_points(std::move(found), 1e-9);
    if (static_cast<int>(set.points.size()) != expected_count)
        throw CommonZerosError("common_zeros: found " + std::to_string(set.points.size()) + " real zeros, expected " +
                                   std::to_string(expected_count),
                               set.points);
    return set;
}

// ---------------------------------------------------------------------------------------------
// Fixtures

HankelFixture fixture_even_h3()
{
    const double c = 4.0 / (27.0 * std::sqrt(7.0));
    auto H = make_hankel(SystemKind::Even, 3, {-11.0 / 25 * c, 0.0, c, 0.0, 2.0 / 5 * c, 0.0});
    return {"even H3", H, H};
}

HankelFixture fixture_odd_h3()
{
    const double c = 4.0 / 135.0;
    auto printed = make_hankel(SystemKind::Odd, 3, {-8.0 / 35 * c, 0.0, c, 0.0, 0.0, 0.0, 4.0 / 35 * c});
    auto corrected = printed;
    corrected.h[6] = 27.0 / 35 * c;
    return {"odd H3", printed, corrected};
}

HankelFixture fixture_odd_h4()
{
    const double c = 44.0 / 14385.0, d = 94.0 / 231.0, e = -82.0 / 55.0;
    auto H = make_hankel(SystemKind::Odd, 4, {d * c, c, c, c, e * c, c, c, c, d * c});
    return {"odd H4", H, H};
}

HankelFixture fixture_odd_h5()
{
    const double c = 96.0 / 77875.0;
    const double s = std::sqrt(43.0 / 2.0) / 9.0, t = 10.0 * std::sqrt(86.0) / 189.0, a = 1151.0 / 2079.0;
    const auto build = [&](double q) {
        return make_hankel(SystemKind::Odd, 5,
                           {a * c, t * c, q * c, -s * c, c, 0.0, c, s * c, q * c, -t * c, a * c});
    };
    return {"odd H5", build(-31.0 / 86.0), build(-31.0 / 81.0)};
}

std::optional<HankelFixture> fixture_for(SystemKind kind, int n)
{
    if (kind == SystemKind::Even && n == 3)
        return fixture_even_h3();
    if (kind == SystemKind::Odd && n == 3)
        return fixture_odd_h3();
    if (kind == SystemKind::Odd && n == 4)
        return fixture_odd_h4();
    if (kind == SystemKind::Odd && n == 5)
        return fixture_odd_h5();
    return std::nullopt;
}

namespace
{

Eigen::MatrixXd q5_rows(double root)
{
    const double t = 10.0 * std::sqrt(86.0) / 189.0;
    Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(4, 6);
    Q.row(0) << t, 1081.0 * std::sqrt(11.0) / (2835.0 * std::sqrt(3.0)), 0, 0, 0, 1;
    Q.row(1) << 205.0 / (21.0 * std::sqrt(33.0)), t, 0, 0, 1, 0;
    Q.row(2) << -5.0 * std::sqrt(root) / (27.0 * std::sqrt(77.0)), 62.0 * std::sqrt(5.0) / (81.0 * std::sqrt(21.0)), 0,
        1, 0, 0;
    Q.row(3) << -10.0 * std::sqrt(5.0) / (3.0 * std::sqrt(77.0)), -std::sqrt(430.0) / (9.0 * std::sqrt(21.0)), 1, 0, 0,
        0;
    return Q;
}

} // namespace

Eigen::MatrixXd fixture_q5_printed()
{
    return q5_rows(438.0);
}

Eigen::MatrixXd fixture_q5_corrected()
{
    return q5_rows(430.0);
}

// ---------------------------------------------------------------------------------------------
// Pipeline

DiscoveredRule rule_from_hankel(const HankelParam& H)
{
    const int n = H.n;
    const bool even = H.kind == SystemKind::Even;
    LegendreSystem system;
    if (even)
    {
        if (even_system_residual(n, H).cwiseAbs().maxCoeff() > 1e-9)
            throw NumericalError("matrix does not solve the even system");
        system = even_system_polynomials(H);
    }
    else
    {
        if (odd_system_residual(n, H).cwiseAbs().maxCoeff() > 1e-9)
            throw NumericalError("matrix does not solve the odd system");
        const auto sol = odd_solution_from_hankel(H);
        if (!sol)
            throw NumericalError("I - G H G is not positive semidefinite of rank floor(n/2)");
        system = orthogonal_polys_from_U(n, sol->U);
    }
    const int expected = even ? static_cast<int>(dim_polynomials(n - 1)) : static_cast<int>(moeller_count(n));
    const int degree = even ? 2 * n - 2 : 2 * n - 1;

    DiscoveredRule d;
    d.H = H;
    d.local_dimension = solution_set_dimension(H);
    auto nodes = common_zeros(system, expected);
    d.rule = weights_from_vandermonde(nodes, WeightSpec::constant(), degree);
    d.rule.provenance = std::string(even ? "even" : "odd") + " system n=" + std::to_string(n) + "; " + d.rule.provenance;
    d.report = exactness_check(d.rule);
    for (const Point p : d.rule.nodes.points)
        if (std::max(std::abs(p.x), std::abs(p.y)) > 1.0 + 1e-12)
            ++d.outside;
    return d;
}

DiscoveryReport discover(SystemKind kind, int n, const SolverOptions& options)
{
    DiscoveryReport report;
    report.kind = kind;
    report.n = n;
    report.seeds = options.seeds;
    report.rng_seed = options.rng_seed;
    report.fixture = fixture_for(kind, n);

    std::vector<HankelParam> solutions;
    if (kind == SystemKind::Even)
        solutions = solve_even_system(n, options, &report.converged_starts);
    else
    {
        auto solved = odd_system_solve(n, options);
        report.algebraic_only = std::move(solved.algebraic_only);
        report.converged_starts = solved.converged_starts;
        for (const auto& s : solved.solutions)
            solutions.push_back(s.H);
    }

    for (const auto& H : solutions)
    {
        if (report.fixture)
        {
            const double dc = symmetry_distance(H, report.fixture->corrected);
            const double dp = symmetry_distance(H, report.fixture->printed);
            if (!report.fixture_distance_corrected || dc < *report.fixture_distance_corrected)
                report.fixture_distance_corrected = dc;
            if (!report.fixture_distance_printed || dp < *report.fixture_distance_printed)
                report.fixture_distance_printed = dp;
        }
        try
        {
            auto d = rule_from_hankel(H);
            d.rule.provenance += " rng=" + std::to_string(options.rng_seed);
            report.rules.push_back(std::move(d));
        }
        catch (const Error& e)
        {
            report.failures.emplace_back(e.what());
        }
    }
    return report;
}

} // namespace cubasquare
