#pragma once

#include "tfdforge/common.hpp"
#include "tfdforge/sparse.hpp"

#include <vector>

namespace tfd {

/// Ascending energies with orthonormal eigenvectors as columns.
///
/// Inside a degenerate block each vector's phase is fixed so its largest
/// entry is real positive, and the block's vectors are sorted
/// lexicographically by their rounded entries.
struct EigenDecomposition {
    std::vector<double> energies;
    Eigen::MatrixXcd vectors;

    double spectral_range() const { return energies.empty() ? 0.0 : energies.back() - energies.front(); }
};

EigenDecomposition eig_full(const Eigen::MatrixXcd& h);
EigenDecomposition eig_full(const SparseOperator& h);

struct LanczosOptions {
    double tol = 1e-10;        ///< required residual norm |Hv - Ev|
    int krylov_dim = 60;       ///< basis size per restart cycle
    int max_restarts = 400;
    std::uint64_t seed = 20240607;
};

struct GroundState {
    double energy = 0.0;
    Statevector vector;
    double residual = 0.0;
    int matvecs = 0;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_residual)
        : std::runtime_error(what), best_residual_(best_residual) {}
    double best_residual() const noexcept { return best_residual_; }

private:
    double best_residual_;
};

/// Lowest eigenpair by restarted Lanczos with full reorthogonalisation.
/// Each cycle restarts from the current Ritz vector; the start vector is a
/// seeded random vector, so results are reproducible for a fixed thread count.
GroundState ground_state(const SparseOperator& h, const LanczosOptions& opts = {});

} // namespace tfd
