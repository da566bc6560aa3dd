#pragma once

#include "cubasquare/cubature.hpp"
#include "cubasquare/nodes.hpp"
#include "cubasquare/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cubasquare
{

// Everything here is for the constant weight with the orthonormal product Legendre basis
// P_k^n = P^_{n-k}(x) P^_k(y), P^_j = sqrt(2j+1) P_j.

double legendre_a(int k); // (k+1) / sqrt((2k+1)(2k+3))

/// A_{n,1}, A_{n,2} of size (n+1) x (n+2).
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> legendre_A_matrices(int n);

/// gamma_k = (2k)! sqrt(2k+1) / (2^k k!^2), the leading coefficient of P^_k.
double gamma_k(int k);

/// Diagonal of G_n: g_{n-k,k} = gamma_{n-k} gamma_k, k = 0..n.
Eigen::VectorXd scaling_diagonal(int n);

enum class SystemKind
{
    Even, // Gaussian rules of degree 2n-2: (n+1) x n Hankel matrix, 2n entries
    Odd,  // minimal rules of degree 2n-1: (n+1) x (n+1) Hankel matrix, 2n+1 entries
};

struct HankelParam
{
    SystemKind kind = SystemKind::Odd;
    int n = 0;
    std::vector<double> h;

    int rows() const { return n + 1; }
    int cols() const { return kind == SystemKind::Even ? n : n + 1; }
    Eigen::MatrixXd matrix() const; // H[i][j] = h[i+j]
};

HankelParam make_hankel(SystemKind kind, int n, std::vector<double> h);

/// Gamma = G_n H G_{n-1}^t for the even system.
Eigen::MatrixXd even_gamma(const HankelParam& H);

/// Independent entries (i < j) of Gamma^t (A1^t A2 - A2^t A1) Gamma - (A1 A2^t - A2 A1^t), A = A_{n-1}.
Eigen::VectorXd even_system_residual(int n, const HankelParam& H);

/// W = I - G_n H G_n^t. (The sign that makes the printed matrices positive semidefinite.)
Eigen::MatrixXd odd_W(const HankelParam& H);

/// Independent entries (i < j) of W (A1^t A2 - A2^t A1) W, A = A_{n-1}.
Eigen::VectorXd odd_system_residual(int n, const HankelParam& H);

/// Residuals of A1 (W - I) A2^t - (A1 (W - I) A2^t)^t; zero for every Hankel matrix.
double odd_parameterization_defect(const HankelParam& H);

/// Residuals of A_i Gamma - Gamma^t A_i^t, i = 1, 2; zero for every Hankel matrix.
double even_parameterization_defect(const HankelParam& H);

/// Local dimension of the solution set at H: unknowns minus the numerical rank of the residual Jacobian.
int solution_set_dimension(const HankelParam& H);

/// Symmetry images of h under the sign flips of x, y and the swap of x and y.
std::vector<std::vector<double>> symmetry_orbit(const HankelParam& H);

/// Smallest max-norm distance between b and any symmetry image of a; the aligned image in `aligned`.
double symmetry_distance(const HankelParam& a, const HankelParam& b, HankelParam* aligned = nullptr);

struct SolverOptions
{
    int seeds = 200;
    std::uint64_t rng_seed = 42;
    double tolerance = 1e-10;
    bool axis_symmetric = false; // restrict to h_i = 0 for odd i
    int max_iterations = 400;
};

/// Distinct solutions (up to symmetry) from `seeds` Levenberg-Marquardt starts.
std::vector<HankelParam> solve_even_system(int n, const SolverOptions& options, int* converged_starts = nullptr);

struct OddSystemSolution
{
    int n = 0;
    HankelParam H;
    Eigen::MatrixXd W; // I - G H G^t
    Eigen::MatrixXd V; // (n+1) x floor(n/2), W = V V^t
    Eigen::MatrixXd U; // (n+1) x (n+1-floor(n/2)), U^t V = 0
    Eigen::VectorXd eigenvalues;
};

/// Checks W for positive semidefiniteness with rank floor(n/2) and factors it; nullopt otherwise.
std::optional<OddSystemSolution> odd_solution_from_hankel(const HankelParam& H);

enum class OddFormulation
{
    Factored, // unknowns (h, V) with I - G H G^t = V V^t and V^t M V = 0
    Direct,   // unknowns h with W M W = 0, then the PSD and rank filter
};

struct OddSolveResult
{
    std::vector<OddSystemSolution> solutions;
    std::vector<HankelParam> algebraic_only; // solve the equations but fail the PSD/rank test
    int converged_starts = 0;
};

OddSolveResult odd_system_solve(int n, const SolverOptions& options,
                                OddFormulation formulation = OddFormulation::Factored);

/// Polynomials C_n P_n + C_{n-1} P_{n-1} in the product Legendre basis.
struct LegendreSystem
{
    int n = 0;
    Eigen::MatrixXd top;   // r x (n+1)
    Eigen::MatrixXd lower; // r x n (may be empty)

    int size() const { return static_cast<int>(top.rows()); }
    Eigen::VectorXd evaluate(Point p) const;
    Eigen::MatrixXd jacobian(Point p) const; // r x 2
    std::vector<Polynomial2D> polynomials() const;
};

/// The columns of U as coefficient vectors: U^t P_n.
LegendreSystem orthogonal_polys_from_U(int n, const Eigen::MatrixXd& U);

/// P_n + Gamma P_{n-1}.
LegendreSystem even_system_polynomials(const HankelParam& H);

class CommonZerosError : public NumericalError
{
  public:
    CommonZerosError(const std::string& what, std::vector<Point> found)
        : NumericalError(what), found_(std::move(found))
    {
    }
    const std::vector<Point>& found() const { return found_; }

  private:
    std::vector<Point> found_;
};

/// All real common zeros by Gauss-Newton from a 60 x 60 grid on [-1.3, 1.3]^2; throws
/// CommonZerosError when the count differs from expected_count.
NodeSet common_zeros(const LegendreSystem& system, int expected_count, int grid = 60);

/// Built-in matrices. "printed" reproduces the display; "corrected" fixes entries that do not solve the system.
struct HankelFixture
{
    std::string name;
    HankelParam printed;
    HankelParam corrected;
};

HankelFixture fixture_even_h3();
HankelFixture fixture_odd_h3();
HankelFixture fixture_odd_h4();
HankelFixture fixture_odd_h5();
std::optional<HankelFixture> fixture_for(SystemKind kind, int n);

/// Coefficients of the displayed Q_1..Q_4 of degree 5 (rows, over P_0^5..P_5^5), printed and corrected.
Eigen::MatrixXd fixture_q5_printed();
Eigen::MatrixXd fixture_q5_corrected();

struct DiscoveredRule
{
    HankelParam H;
    CubatureRule rule;
    ExactnessReport report;
    int outside = 0; // nodes outside [-1,1]^2
    int local_dimension = 0;
};

struct DiscoveryReport
{
    SystemKind kind = SystemKind::Odd;
    int n = 0;
    int seeds = 0;
    std::uint64_t rng_seed = 0;
    std::vector<DiscoveredRule> rules;
    std::vector<HankelParam> algebraic_only;
    std::vector<std::string> failures; // solutions whose nodes or weights could not be completed
    std::optional<HankelFixture> fixture;
    std::optional<double> fixture_distance_corrected; // best symmetry-aligned distance over solutions
    std::optional<double> fixture_distance_printed;
    int converged_starts = 0;

    bool found() const { return !rules.empty(); }
};

/// Solve, find common zeros, compute Vandermonde weights and verify exactness for every solution.
DiscoveryReport discover(SystemKind kind, int n, const SolverOptions& options);

/// The same pipeline for one given matrix (for instance a fixture); throws if H does not solve the system.
DiscoveredRule rule_from_hankel(const HankelParam& H);

} // namespace cubasquare
