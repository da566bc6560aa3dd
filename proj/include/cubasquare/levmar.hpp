#pragma once

#include <Eigen/Dense>

#include <functional>

namespace cubasquare
{

struct LevMarOptions
{
    int max_iterations = 400;
    double residual_tolerance = 1e-14; // stop when max |r_i| falls below this
    double step_tolerance = 1e-16;     // relative step size
    double initial_damping = 1e-3;
};

struct LevMarResult
{
    Eigen::VectorXd x;
    double residual = 0.0; // max |r_i| at x
    int iterations = 0;
    bool converged = false;
};

/// Fills r and J at x.
using ResidualFunction = std::function<void(const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd& J)>;

/// Levenberg-Marquardt with identity damping, so square, over- and underdetermined systems all work.
LevMarResult levenberg_marquardt(const ResidualFunction& f, Eigen::VectorXd x0, const LevMarOptions& options = {});

} // namespace cubasquare
