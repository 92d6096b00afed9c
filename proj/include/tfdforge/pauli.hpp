#pragma once

#include "tfdforge/common.hpp"
#include "tfdforge/fock.hpp"
#include "tfdforge/sparse.hpp"

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tfd {

/// Coefficient times a tensor product of single-qubit Paulis, stored symplectically:
/// qubit q carries X if only x bit q is set, Z if only z, Y if both.
class PauliString {
public:
    PauliString() = default;
    PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask, cplx coefficient = 1.0);

    /// letters[q] is the symbol on qubit q (so "XZ" is X_0 Z_1).
    static PauliString from_letters(std::string_view letters, cplx coefficient = 1.0);
    static PauliString identity(int n_qubits, cplx coefficient = 1.0);

    int n_qubits() const noexcept { return n_qubits_; }
    std::uint64_t x_mask() const noexcept { return x_; }
    std::uint64_t z_mask() const noexcept { return z_; }
    cplx coefficient() const noexcept { return coef_; }
    void set_coefficient(cplx c) noexcept { coef_ = c; }

    char letter(int qubit) const;
    std::string letters() const;
    int y_count() const noexcept;
    bool is_diagonal() const noexcept { return x_ == 0; }
    bool same_letters(const PauliString& o) const noexcept { return x_ == o.x_ && z_ == o.z_ && n_qubits_ == o.n_qubits_; }

    /// Entrywise complex conjugate: coefficient conjugated, sign flip per Y letter.
    PauliString conjugated() const;

    /// Sub-string on qubits [first, first + count), coefficient 1.
    PauliString slice(int first, int count) const;

    /// coefficient * i^{#Y}; the factor in front of X^x Z^z.
    cplx phased_weight() const noexcept;

private:
    int n_qubits_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    cplx coef_{1.0, 0.0};
};

PauliString operator*(const PauliString& a, const PauliString& b);
bool commutes(const PauliString& a, const PauliString& b);

/// Coefficient merge tolerance for like strings.
inline constexpr double kPauliMergeTol = 1e-14;

/// Sums like strings (first-occurrence order kept) and drops those with |c| < tol.
std::vector<PauliString> merge_like(std::span<const PauliString> strings, double tol = kPauliMergeTol);

/// Jordan-Wigner image with a_k = Z_{<k} (X_k + i Y_k)/2.
///
/// With skip_z_strings, Z factors on qubits that no ladder operator of the
/// term touches are dropped; the Z factors that land on touched qubits (the
/// reordering sign) are kept.
std::vector<PauliString> jordan_wigner(const FermionOperator& op, bool skip_z_strings = false);

SparseOperator build_sparse(std::span<const PauliString> strings, int n_qubits, const BuildOptions& opts = {});

/// P |psi> for a single string, coefficient included.
Statevector apply_pauli(const PauliString& p, const Statevector& psi);

} // namespace tfd
