#include "tfdforge/doubled.hpp"

#include "tfdforge/solver.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace tfd {

namespace {

int log2_dim(std::size_t dim) {
    require(dim > 0 && std::has_single_bit(dim), "dimension must be a power of two");
    return std::countr_zero(dim);
}

void check_doubled_cap(int n_modes, const BuildOptions& build) {
    if (2 * n_modes > build.qubit_cap)
        throw ResourceError("doubled space needs " + std::to_string(2 * n_modes) + " qubits, above the qubit cap of " +
                            std::to_string(build.qubit_cap));
}

std::vector<PauliString> doubled_image(const FermionOperator& sides, const FermionOperator& cross,
                                       CrossMapping mapping) {
    auto paulis = jordan_wigner(sides, false);
    const auto c = jordan_wigner(embed_doubled(cross, Side::Cross), mapping == CrossMapping::SkipZ);
    paulis.insert(paulis.end(), c.begin(), c.end());
    return merge_like(paulis);
}

} // namespace

CouplingWeights coupling_weights(const ModeFrequencies& freqs, double beta) {
    if (!(beta > 0.0)) throw DomainError("coupling_weights: beta must be positive");
    CouplingWeights w{std::vector<double>(freqs.size()), beta, freqs};
    for (std::size_t i = 0; i < freqs.size(); ++i) {
        const double omega = freqs.values[i];
        if (std::isinf(beta)) {
            w.mu[i] = 0.0;
            continue;
        }
        const double x = beta * omega / 2.0;
        w.mu[i] = std::abs(x) < 1e-8 ? 1.0 / beta : omega / (2.0 * std::sinh(x));
    }
    return w;
}

BogoliubovFactors bogoliubov_factors(const ModeFrequencies& freqs, double beta) {
    if (!(beta >= 0.0)) throw DomainError("bogoliubov_factors: beta must be non-negative");
    BogoliubovFactors f;
    f.beta = beta;
    for (double omega : freqs.values) {
        const double theta = (omega == 0.0 || beta == 0.0) ? std::numbers::pi / 4.0 : std::atan(std::exp(-beta * omega / 2.0));
        f.theta.push_back(theta);
        f.u.push_back(std::cos(theta));
        f.v.push_back(std::sin(theta));
    }
    return f;
}

FermionOperator pair_coupling(std::span<const double> c) {
    const int n = static_cast<int>(c.size());
    FermionOperator op(2 * n);
    for (int i = 0; i < n; ++i) {
        const double ci = c[static_cast<std::size_t>(i)];
        op.add(ci, {annihilate(i), annihilate(n + i)});
        op.add(-ci, {create(i), create(n + i)});
    }
    return op;
}

FermionOperator pair_coupling_hermitian_form(std::span<const double> c) {
    const int n = static_cast<int>(c.size());
    FermionOperator op(2 * n);
    for (int i = 0; i < n; ++i) {
        const double ci = c[static_cast<std::size_t>(i)];
        op.add(ci, {annihilate(i), annihilate(n + i)});
        op.add(ci, {create(n + i), create(i)});
    }
    return op;
}

TotalHamiltonian build_h_total(const FermionOperator& h, const ModeFrequencies& freqs, double beta,
                               const DoubledOptions& opts) {
    const int n = h.n_modes();
    require(static_cast<int>(freqs.size()) == n, "build_h_total: one frequency per mode required");
    check_doubled_cap(n, opts.build);

    TotalHamiltonian tot;
    tot.n_modes = n;
    tot.beta = beta;
    tot.weights = coupling_weights(freqs, beta);
    tot.cross_mapping = opts.cross_mapping;

    std::vector<double> c(tot.weights.mu);
    for (auto& x : c) x *= 2.0;
    const FermionOperator sides = embed_doubled(h, Side::Left) + embed_doubled(h, Side::Right);
    tot.paulis = doubled_image(sides, pair_coupling(c), opts.cross_mapping);
    tot.op = build_sparse(tot.paulis, 2 * n, opts.build);
    return tot;
}

double FamilyVariant::constant() const {
    double s = 0.0;
    for (double c : zero_point) s += c;
    return s;
}

FamilyVariant build_family_variant(const ModeFrequencies& freqs, double beta, std::span<const double> left,
                                   std::span<const double> right, const DoubledOptions& opts) {
    const int n = static_cast<int>(freqs.size());
    require(left.size() == freqs.size() && right.size() == freqs.size(),
            "build_family_variant: L and R need one entry per mode");
    check_doubled_cap(n, opts.build);

    FamilyVariant fam;
    fam.left.assign(left.begin(), left.end());
    fam.right.assign(right.begin(), right.end());
    fam.factors = bogoliubov_factors(freqs, beta);

    FermionOperator sides(2 * n);
    std::vector<double> cross(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double u2 = fam.factors.u[k] * fam.factors.u[k];
        const double v2 = fam.factors.v[k] * fam.factors.v[k];
        sides.add(left[k] * u2 - right[k] * v2, {create(i), annihilate(i)});
        sides.add(right[k] * u2 - left[k] * v2, {create(n + i), annihilate(n + i)});
        cross[k] = (left[k] + right[k]) * fam.factors.v[k] * fam.factors.u[k];
        fam.zero_point.push_back((left[k] + right[k]) * v2);
    }
    sides.add(fam.constant(), {});

    fam.paulis = doubled_image(sides, pair_coupling_hermitian_form(cross), opts.cross_mapping);
    fam.op = build_sparse(fam.paulis, 2 * n, opts.build);
    return fam;
}

Statevector exact_tfd(const SparseOperator& h, double beta) {
    if (!(beta >= 0.0)) throw DomainError("exact_tfd: beta must be non-negative");
    const int n = log2_dim(h.dim());
    check_doubled_cap(n, BuildOptions{});
    const auto eig = eig_full(h);
    const auto dim = static_cast<Eigen::Index>(h.dim());

    Eigen::VectorXd lambda(dim);
    const double e0 = eig.energies.front();
    const double degenerate = 1e-9 * std::max(1.0, eig.spectral_range());
    for (Eigen::Index m = 0; m < dim; ++m) {
        const double gap = eig.energies[static_cast<std::size_t>(m)] - e0;
        if (std::isinf(beta)) lambda[m] = gap < degenerate ? 1.0 : 0.0;
        else lambda[m] = std::exp(-beta * gap / 2.0);
    }
    lambda /= lambda.norm();

    // psi[l + D r] = sum_m lambda_m V(l, m) conj(V(r, m)), i.e. vec(V diag(lambda) V^dagger).
    const Eigen::MatrixXcd m = eig.vectors * lambda.cast<cplx>().asDiagonal() * eig.vectors.adjoint();
    return Eigen::Map<const Statevector>(m.data(), dim * dim);
}

double state_overlap(const Statevector& psi, const Statevector& phi) {
    require(psi.size() == phi.size(), "state_overlap: dimension mismatch");
    require(std::abs(psi.norm() - 1.0) <= 1e-8 && std::abs(phi.norm() - 1.0) <= 1e-8,
            "state_overlap: states must be normalised");
    return std::min(1.0, std::abs(psi.dot(phi)));
}

Statevector tensor_lr(const Statevector& left, const Statevector& right) {
    Statevector out(left.size() * right.size());
    for (Eigen::Index r = 0; r < right.size(); ++r) out.segment(r * left.size(), left.size()) = left * right[r];
    return out;
}

} // namespace tfd
