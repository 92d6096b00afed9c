#pragma once

#include "tfdforge/fock.hpp"
#include "tfdforge/models.hpp"
#include "tfdforge/pauli.hpp"
#include "tfdforge/sparse.hpp"

#include <limits>
#include <vector>

namespace tfd {

inline constexpr double kInfiniteBeta = std::numeric_limits<double>::infinity();

/// mu_i = w_i / (2 sinh(beta w_i / 2)), with the 1/beta limit near w_i = 0.
struct CouplingWeights {
    std::vector<double> mu;
    double beta = 1.0;
    ModeFrequencies source;
};

/// Throws DomainError for beta <= 0. beta = +inf gives all-zero weights.
CouplingWeights coupling_weights(const ModeFrequencies& freqs, double beta);

/// theta_k = arctan(e^{-beta w_k / 2}), u_k = cos theta_k, v_k = sin theta_k,
/// so that v_k / u_k is the Boltzmann amplitude ratio of mode k.
struct BogoliubovFactors {
    std::vector<double> theta, u, v;
    double beta = 1.0;
};

/// Accepts beta >= 0 (beta = 0 gives theta = pi/4); throws DomainError for beta < 0.
BogoliubovFactors bogoliubov_factors(const ModeFrequencies& freqs, double beta);

/// How the L-R pair terms are mapped to qubits. SkipZ drops the Jordan-Wigner
/// strings between the pair, which makes the positive-amplitude TFD the exact
/// ground state in the free case.
enum class CrossMapping { SkipZ, FullJordanWigner };

struct DoubledOptions {
    CrossMapping cross_mapping = CrossMapping::SkipZ;
    BuildOptions build;
};

/// H_L + H_R + H_LR on 2n qubits; qubits 0..n-1 are the left copy.
struct TotalHamiltonian {
    int n_modes = 0; ///< modes per side
    double beta = 1.0;
    CouplingWeights weights;
    CrossMapping cross_mapping = CrossMapping::SkipZ;
    std::vector<PauliString> paulis; ///< qubit image, 2n qubits
    SparseOperator op;
};

/// Pair coupling sum_i c_i (a^L_i a^R_i - a^{L+}_i a^{R+}_i) on 2n modes.
FermionOperator pair_coupling(std::span<const double> c);

/// Same operator written as sum_i c_i (a^L_i a^R_i + a^{R+}_i a^{L+}_i).
FermionOperator pair_coupling_hermitian_form(std::span<const double> c);

/// Builds H (x) I + I (x) H^* + sum_i 2 mu_i (a^L_i a^R_i - a^{L+}_i a^{R+}_i).
///
/// The factor 2 is what makes the free-fermion TFD the exact ground state
/// (it is the L_i = R_i member of the deformed family).
TotalHamiltonian build_h_total(const FermionOperator& h, const ModeFrequencies& freqs, double beta,
                               const DoubledOptions& opts = {});

/// Member of the deformed family
///   sum_i (L u^2 - R v^2) n^L_i + (R u^2 - L v^2) n^R_i
///        + (L + R) v u (a^L a^R + a^{R+} a^{L+}) + (L + R) v^2.
struct FamilyVariant {
    std::vector<double> left, right;
    std::vector<double> zero_point; ///< (L_i + R_i) v_i^2 per mode
    BogoliubovFactors factors;
    std::vector<PauliString> paulis;
    SparseOperator op;

    double constant() const;
};

FamilyVariant build_family_variant(const ModeFrequencies& freqs, double beta, std::span<const double> left,
                                   std::span<const double> right, const DoubledOptions& opts = {});

/// Sum_m lambda_m |E_m> (x) |E_m^*>, lambda_m = e^{-beta E_m/2}/sqrt(Z), on 2n
/// qubits with the left copy in the low bits. beta = 0 gives the maximally
/// entangled pair state; beta = +inf keeps only the ground manifold.
Statevector exact_tfd(const SparseOperator& h, double beta);

/// |<psi|phi>|; both inputs must be unit norm within 1e-8.
double state_overlap(const Statevector& psi, const Statevector& phi);

/// |L> (x) |R> with the left factor in the low bits.
Statevector tensor_lr(const Statevector& left, const Statevector& right);

} // namespace tfd
