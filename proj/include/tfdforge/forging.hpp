#pragma once

#include "tfdforge/doubled.hpp"
#include "tfdforge/fock.hpp"
#include "tfdforge/pauli.hpp"
#include "tfdforge/sparse.hpp"

#include <span>
#include <vector>

namespace tfd {

/// Layered Hamiltonian variational ansatz U(theta) = prod_l prod_s exp(-i theta_{l,s} h_s).
///
/// sets[0] holds the strings of the quadratic part; the remaining strings of
/// the Hamiltonian are greedily grouped into mutually commuting sets. Within a
/// set the strings are sorted (letters, then coefficient), which fixes the
/// order of the single-string rotations.
struct HVALayout {
    int n_qubits = 0;
    int layers = 1;
    std::vector<std::vector<PauliString>> sets;

    int n_sets() const noexcept { return static_cast<int>(sets.size()); }
    int n_params() const noexcept { return layers * n_sets(); }
    int param_index(int layer, int set) const noexcept { return layer * n_sets() + set; }
};

/// Orders strings by letters, then by real and imaginary coefficient.
bool pauli_order(const PauliString& a, const PauliString& b);

HVALayout partition_commuting(std::span<const PauliString> paulis, std::span<const PauliString> h2_strings,
                              int layers = 1);

/// |f_b(theta)> = U(theta)|b>.
Statevector apply_ansatz(const HVALayout& layout, const Eigen::VectorXd& theta, const FockState& b);

/// U(theta) as a dense matrix; column b is |f_b(theta)>.
Eigen::MatrixXcd ansatz_unitary(const HVALayout& layout, const Eigen::VectorXd& theta);

/// <f_b|H|f_b> for each basis state, imaginary residue checked against 1e-10.
std::vector<double> energy_estimators(const HVALayout& layout, const Eigen::VectorXd& theta,
                                      const SparseOperator& h, std::span<const FockState> basis);

struct SchmidtWeights {
    Eigen::VectorXd lambda; ///< one entry per basis state, zero outside the retained set
    std::vector<double> energies;
    double beta = 0.0;
    int rank = 0;

    std::vector<int> retained() const;
};

/// lambda_i ~ exp(-beta (E_i - min E) / 2) on the rank lowest estimators
/// (ties broken by index), normalised so that sum lambda^2 = 1.
SchmidtWeights schmidt_weights(std::span<const double> energies, double beta, int rank);

struct LRTerm {
    double coefficient;
    PauliString left;  ///< n-qubit string, unit coefficient
    PauliString right; ///< n-qubit string, unit coefficient
};

struct LRTermDecomposition {
    int n_qubits = 0; ///< per side
    std::vector<LRTerm> terms;
};

LRTermDecomposition decompose_lr(std::span<const PauliString> paulis, int n_qubits_per_side);
LRTermDecomposition decompose_lr(const TotalHamiltonian& h_total);

/// <Psi|H|Psi> for the forged state, from n-qubit matrix elements only:
///   sum_a c_a sum_ij l_i l_j <f_i|O_L|f_j> conj(<f_i|conj(O_R)|f_j>).
double forged_expectation(const LRTermDecomposition& decomp, const HVALayout& layout,
                          const Eigen::VectorXd& theta, const SchmidtWeights& weights);

/// sum_i lambda_i |f_i> (x) |f_i^*> on 2n qubits (validation only).
Statevector assemble_forged_state(const HVALayout& layout, const Eigen::VectorXd& theta,
                                  const SchmidtWeights& weights);

/// Everything the forged cost needs besides theta. beta is fixed, not optimised.
struct ForgedProblem {
    LRTermDecomposition decomp;
    HVALayout layout;
    SparseOperator system; ///< H on n qubits, used for the energy estimators
    double beta = 1.0;
    int rank = 0;          ///< 0 means full rank
};

struct ForgedEvaluation {
    double cost = 0.0;
    std::vector<double> energies;
    SchmidtWeights weights;
};

ForgedEvaluation evaluate_forged(const ForgedProblem& problem, const Eigen::VectorXd& theta);
double forged_cost(const ForgedProblem& problem, const Eigen::VectorXd& theta);

} // namespace tfd
