#pragma once

#include "cubasquare/basis2d.hpp"
#include "cubasquare/cubature.hpp"
#include "cubasquare/nodes.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace cubasquare
{

/// Lagrange interpolant L_n f = sum_k f(z_k) l_k on a fixed node set.
class Interpolant
{
  public:
    virtual ~Interpolant() = default;

    const std::vector<Point>& nodes() const { return nodes_; }
    const std::vector<double>& values() const { return values_; }

    double operator()(Point p) const;

    /// out[k] = l_k(p).
    virtual void cardinal(Point p, std::span<double> out) const = 0;

    /// Rows = points, columns = cardinal functions.
    virtual Eigen::MatrixXd cardinal_matrix(std::span<const Point> points) const = 0;

  protected:
    Interpolant(std::vector<Point> nodes, std::vector<double> values);

  private:
    std::vector<Point> nodes_;
    std::vector<double> values_;
};

/// l_k(z) = K_n^*(z, z_k) / K_n^*(z_k, z_k).
class KernelInterpolant final : public Interpolant
{
  public:
    KernelInterpolant(const NodeSet& nodes, KernelStarSpec spec, std::shared_ptr<const OrthoBasis2D> basis,
                      std::vector<double> values);

    void cardinal(Point p, std::span<double> out) const override;
    Eigen::MatrixXd cardinal_matrix(std::span<const Point> points) const override;

    const KernelStarSpec& spec() const { return spec_; }

  private:
    Eigen::MatrixXd features(std::span<const Point> points) const;

    KernelStarSpec spec_;
    std::shared_ptr<const OrthoBasis2D> basis_;
    Eigen::MatrixXd scaled_; // column k = phi(z_k) / |phi(z_k)|^2
};

/// Unique interpolant in Pi_n on the Padua points via the collocation system in T_a(x) T_b(y), a+b <= n.
class PaduaInterpolant final : public Interpolant
{
  public:
    PaduaInterpolant(const NodeSet& nodes, std::vector<double> values);

    void cardinal(Point p, std::span<double> out) const override;
    Eigen::MatrixXd cardinal_matrix(std::span<const Point> points) const override;

    int n() const { return n_; }
    double condition_number() const { return condition_; }
    const Eigen::VectorXd& coefficients() const { return coefficients_; }

  private:
    int n_;
    double condition_;
    Eigen::MatrixXd inverse_; // dim x N
    Eigen::VectorXd coefficients_;
};

std::unique_ptr<KernelInterpolant> interpolate_kernel(const NodeSet& nodes, const KernelStarSpec& spec,
                                                      std::shared_ptr<const OrthoBasis2D> basis,
                                                      std::vector<double> f_values);

std::unique_ptr<PaduaInterpolant> interpolate_padua(int n, std::vector<double> f_values);

/// Interpolant for an explicit family with values f(z_k).
std::unique_ptr<Interpolant> make_interpolant(const FamilySetup& setup, const std::function<double(Point)>& f);

/// Grid x_i = cos(i pi / r), 0 <= i <= r, squared; nested when r doubles.
std::vector<Point> chebyshev_grid(int resolution);

/// Max over the grid of sum_k |l_k|; a lower estimate of the Lebesgue constant.
double lebesgue_constant(const Interpolant& interp, int resolution = 256);

double lebesgue_constant(NodeFamily f, int n, int resolution = 256, double alpha = -0.5, double beta = -0.5);

enum class ErrorNorm
{
    Sup, // max over a uniform 201 x 201 grid
    L2,  // weighted L2 via a high-order oracle rule
};

struct ConvergenceRow
{
    int n = 0;
    double error = 0.0;
    double ratio = 0.0; // error / previous error (0 for the first row)
};

std::vector<ConvergenceRow> convergence_report(NodeFamily f, const std::function<double(Point)>& fn,
                                               const std::vector<int>& n_list, ErrorNorm norm = ErrorNorm::Sup,
                                               double alpha = -0.5, double beta = -0.5);

} // namespace cubasquare
