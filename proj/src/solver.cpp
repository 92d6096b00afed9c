#include "tfdforge/solver.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace tfd {

namespace {

void check_hermitian(const Eigen::MatrixXcd& h) {
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw ContractViolation("eig_full: matrix is not Hermitian");
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
    Eigen::Index arg = 0;
    const double top = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > top - 1e-10) {
            arg = i;
            break;
        }
    v *= std::conj(v[arg]) / std::abs(v[arg]);
}

bool lex_less(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    constexpr double scale = 1e8;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        const double ar = std::round(a[i].real() * scale), br = std::round(b[i].real() * scale);
        if (ar != br) return ar < br;
        const double ai = std::round(a[i].imag() * scale), bi = std::round(b[i].imag() * scale);
        if (ai != bi) return ai < bi;
    }
    return false;
}

Statevector random_start(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Statevector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = u(rng);
        v[i] = cplx{re, u(rng)};
    }
    return v.normalized();
}

} // namespace

EigenDecomposition eig_full(const Eigen::MatrixXcd& h) {
    require(h.rows() == h.cols(), "eig_full: matrix must be square");
    if (static_cast<std::size_t>(h.rows()) > kDenseDimCap)
        throw ResourceError("eig_full: dimension " + std::to_string(h.rows()) + " exceeds the dense cap of " +
                            std::to_string(kDenseDimCap));
    check_hermitian(h);
    const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_full: eigensolver failed");

    EigenDecomposition out;
    const auto& evals = es.eigenvalues();
    out.energies.assign(evals.data(), evals.data() + evals.size());
    out.vectors = es.eigenvectors();

    const double tol = 1e-9 * std::max(1.0, out.spectral_range());
    const Eigen::Index n = h.rows();
    for (Eigen::Index start = 0; start < n;) {
        Eigen::Index end = start + 1;
        while (end < n && out.energies[static_cast<std::size_t>(end)] - out.energies[static_cast<std::size_t>(start)] < tol) ++end;
        for (Eigen::Index c = start; c < end; ++c) fix_phase(out.vectors.col(c));
        if (end - start > 1) {
            std::vector<Eigen::VectorXcd> block;
            for (Eigen::Index c = start; c < end; ++c) block.emplace_back(out.vectors.col(c));
            std::stable_sort(block.begin(), block.end(), lex_less);
            for (Eigen::Index c = start; c < end; ++c) out.vectors.col(c) = block[static_cast<std::size_t>(c - start)];
        }
        start = end;
    }
    return out;
}

EigenDecomposition eig_full(const SparseOperator& h) {
    if (h.dim() > kDenseDimCap)
        throw ResourceError("eig_full: dimension " + std::to_string(h.dim()) + " exceeds the dense cap of " +
                            std::to_string(kDenseDimCap));
    return eig_full(h.to_dense());
}

GroundState ground_state(const SparseOperator& h, const LanczosOptions& opts) {
    require(opts.krylov_dim >= 2, "ground_state: krylov_dim must be >= 2");
    const auto dim = static_cast<Eigen::Index>(h.dim());
    require(dim > 0, "ground_state: empty operator");

    GroundState best;
    best.residual = std::numeric_limits<double>::infinity();
    Statevector start = random_start(h.dim(), opts.seed);
    const int m = static_cast<int>(std::min<Eigen::Index>(opts.krylov_dim, dim));
    Eigen::MatrixXcd basis(dim, m);

    for (int cycle = 0; cycle <= opts.max_restarts; ++cycle) {
        std::vector<double> alpha, beta;
        basis.col(0) = start;
        int size = 0;
        for (int j = 0; j < m; ++j) {
            Statevector w = h.apply(basis.col(j));
            ++best.matvecs;
            const double a = basis.col(j).dot(w).real();
            alpha.push_back(a);
            ++size;
            // two passes of classical Gram-Schmidt against the whole basis
            for (int pass = 0; pass < 2; ++pass) {
                const Eigen::VectorXcd proj = basis.leftCols(j + 1).adjoint() * w;
                w.noalias() -= basis.leftCols(j + 1) * proj;
            }
            const double b = w.norm();
            if (j + 1 == m) break;
            if (b <= 1e-13 * std::max(1.0, std::abs(a))) break;
            beta.push_back(b);
            basis.col(j + 1) = w / b;
        }

        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(size, size);
        for (int i = 0; i < size; ++i) {
            tri(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < size) tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
        const Eigen::VectorXd coeffs = es.eigenvectors().col(0);
        Statevector ritz = basis.leftCols(size) * coeffs.cast<cplx>();
        ritz.normalize();

        const Statevector hr = h.apply(ritz);
        ++best.matvecs;
        const double energy = ritz.dot(hr).real();
        const double residual = (hr - energy * ritz).norm();
        if (residual < best.residual) {
            best.energy = energy;
            best.vector = ritz;
            best.residual = residual;
        }
        if (residual <= opts.tol) return best;
        start = ritz;
    }
    throw ConvergenceError("ground_state: residual " + std::to_string(best.residual) + " above tolerance after " +
                               std::to_string(opts.max_restarts) + " restarts",
                           best.residual);
}

} // namespace tfd
