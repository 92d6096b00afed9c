#include "tfdforge/optimize.hpp"

#include "tfdforge/common.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace tfd {

Eigen::VectorXd central_gradient(const Objective& f, const Eigen::VectorXd& x, double h, int* evaluations) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        probe[i] = x[i] + h;
        const double fp = f(probe);
        probe[i] = x[i] - h;
        const double fm = f(probe);
        probe[i] = x[i];
        g[i] = (fp - fm) / (2.0 * h);
    }
    if (evaluations) *evaluations += static_cast<int>(2 * x.size());
    return g;
}

OptimizationResult optimize(const Objective& f, const Eigen::VectorXd& theta_init, const OptimizerConfig& cfg) {
    require(cfg.fd_step > 0.0, "optimize: fd_step must be positive");
    require(cfg.max_iterations >= 0, "optimize: max_iterations must be non-negative");
    const auto t0 = std::chrono::steady_clock::now();
    const Eigen::Index n = theta_init.size();

    OptimizationResult res;
    res.theta = theta_init;
    res.cost = f(res.theta);
    res.evaluations = 1;
    res.history.push_back(res.cost);

    Eigen::VectorXd g = central_gradient(f, res.theta, cfg.fd_step, &res.evaluations);
    Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
    bool scaled = false;

    auto finish = [&](bool converged, const char* reason) {
        res.converged = converged;
        res.stop_reason = reason;
        res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return res;
    };

    if (n == 0) return finish(true, "no parameters");
    for (res.iterations = 0; res.iterations < cfg.max_iterations; ++res.iterations) {
        if (g.lpNorm<Eigen::Infinity>() < cfg.grad_tol) return finish(true, "gradient");

        Eigen::VectorXd p = -hinv * g;
        double slope = g.dot(p);
        if (!(slope < 0.0)) {
            hinv.setIdentity();
            p = -g;
            slope = -g.squaredNorm();
        }

        double step = 1.0;
        if (!scaled) step = std::min(1.0, 1.0 / g.lpNorm<Eigen::Infinity>());
        Eigen::VectorXd x_new;
        double f_new = res.cost;
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            x_new = res.theta + step * p;
            f_new = f(x_new);
            ++res.evaluations;
            if (f_new <= res.cost + 1e-4 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        // No decrease along a descent direction: the cost is flat to working precision.
        if (!accepted) return finish(true, "line search");

        const double f_old = res.cost;
        const Eigen::VectorXd s = x_new - res.theta;
        const Eigen::VectorXd g_new = central_gradient(f, x_new, cfg.fd_step, &res.evaluations);
        const Eigen::VectorXd y = g_new - g;
        res.theta = x_new;
        res.cost = f_new;
        res.history.push_back(f_new);
        g = g_new;

        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            if (!scaled) {
                hinv *= sy / y.squaredNorm();
                scaled = true;
            }
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
            hinv = (id - rho * s * y.transpose()) * hinv * (id - rho * y * s.transpose()) + rho * s * s.transpose();
        }

        if (std::abs(f_new - f_old) <= cfg.rel_tol * std::max(1.0, std::abs(f_old))) {
            ++res.iterations;
            return finish(true, "relative change");
        }
    }
    if (g.lpNorm<Eigen::Infinity>() < cfg.grad_tol) return finish(true, "gradient");
    return finish(false, "max iterations");
}

Eigen::VectorXd random_initial_point(int n_params, double scale, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-scale, scale);
    Eigen::VectorXd x(n_params);
    for (int i = 0; i < n_params; ++i) x[i] = u(rng);
    return x;
}

OptimizationResult optimize_restarts(const Objective& f, int n_params, const OptimizerConfig& cfg) {
    require(cfg.restarts >= 1, "optimize_restarts: at least one start required");
    const auto t0 = std::chrono::steady_clock::now();
    OptimizationResult best;
    for (int r = 0; r < cfg.restarts; ++r) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(r);
        auto run = optimize(f, random_initial_point(n_params, cfg.init_scale, seed), cfg);
        run.seed = seed;
        run.restart = r;
        if (r == 0 || run.cost < best.cost) best = std::move(run);
    }
    best.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return best;
}

} // namespace tfd
