#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tfd {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct OptimizerConfig {
    double fd_step = 1e-6;
    double grad_tol = 1e-6;  ///< max-norm of the gradient
    double rel_tol = 1e-10;  ///< relative change of the cost between iterations
    int max_iterations = 200;
    int restarts = 5;
    double init_scale = 0.01; ///< theta_init ~ U[-init_scale, init_scale]
    std::uint64_t seed = 1234;
};

struct OptimizationResult {
    Eigen::VectorXd theta;
    double cost = 0.0;
    std::vector<double> history; ///< accepted costs, starting with the initial point
    int iterations = 0;
    int evaluations = 0;
    bool converged = false;
    std::string stop_reason;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
    int restart = 0;
};

/// Central finite-difference gradient.
Eigen::VectorXd central_gradient(const Objective& f, const Eigen::VectorXd& x, double h, int* evaluations = nullptr);

/// BFGS with a central-difference gradient and Armijo backtracking.
OptimizationResult optimize(const Objective& f, const Eigen::VectorXd& theta_init, const OptimizerConfig& cfg = {});

/// Best of cfg.restarts runs from seeded uniform starts; restart r uses seed cfg.seed + r.
OptimizationResult optimize_restarts(const Objective& f, int n_params, const OptimizerConfig& cfg = {});

Eigen::VectorXd random_initial_point(int n_params, double scale, std::uint64_t seed);

} // namespace tfd
