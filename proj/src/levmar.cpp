#include "cubasquare/levmar.hpp"

#include <algorithm>
#include <cmath>

namespace cubasquare
{

LevMarResult levenberg_marquardt(const ResidualFunction& f, Eigen::VectorXd x0, const LevMarOptions& options)
{
    LevMarResult out;
    out.x = std::move(x0);
    Eigen::VectorXd r;
    Eigen::MatrixXd J;
    f(out.x, r, J);
    double cost = r.squaredNorm();
    double mu = options.initial_damping;
    double nu = 2.0;
    const auto n = out.x.size();

    // Nielsen's damping update.
    for (out.iterations = 0; out.iterations < options.max_iterations; ++out.iterations)
    {
        out.residual = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
        if (out.residual <= options.residual_tolerance)
        {
            out.converged = true;
            return out;
        }
        const Eigen::MatrixXd JtJ = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * r;
        if (mu == options.initial_damping && out.iterations == 0)
            mu *= std::max(1.0, JtJ.diagonal().maxCoeff());
        const Eigen::VectorXd step =
            (JtJ + mu * Eigen::MatrixXd::Identity(n, n)).ldlt().solve(-g);
        if (!step.allFinite())
            break;
        if (step.norm() <= options.step_tolerance * (out.x.norm() + options.step_tolerance))
            break;
        const Eigen::VectorXd candidate = out.x + step;
        Eigen::VectorXd r_new;
        Eigen::MatrixXd J_new;
        f(candidate, r_new, J_new);
        const double cost_new = r_new.squaredNorm();
        const double predicted = -(2.0 * step.dot(g) + step.dot(JtJ * step));
        const double rho = predicted > 0.0 ? (cost - cost_new) / predicted : -1.0;
        if (rho > 0.0 && std::isfinite(cost_new))
        {
            out.x = candidate;
            r = std::move(r_new);
            J = std::move(J_new);
            cost = cost_new;
            mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
            nu = 2.0;
        }
        else
        {
            mu *= nu;
            nu *= 2.0;
            if (!(mu < 1e300))
                break;
        }
    }
    out.residual = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
    out.converged = out.residual <= options.residual_tolerance;
    return out;
}

} // namespace cubasquare
