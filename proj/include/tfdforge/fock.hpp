#pragma once

#include "tfdforge/common.hpp"
#include "tfdforge/sparse.hpp"

#include <optional>
#include <vector>

namespace tfd {

/// Occupation-number basis state over n fermionic modes; mode i is occupied iff bit i is set.
class FockState {
public:
    FockState() = default;
    FockState(std::uint64_t bits, int n_modes);

    std::uint64_t bits() const noexcept { return bits_; }
    int n_modes() const noexcept { return n_modes_; }
    bool occupied(int mode) const { return (bits_ >> mode) & 1u; }
    int particle_count() const noexcept;

    friend bool operator==(const FockState&, const FockState&) = default;

private:
    std::uint64_t bits_ = 0;
    int n_modes_ = 1;
};

/// All 2^n basis states in bitmask order.
std::vector<FockState> computational_basis(int n_modes);

struct Ladder {
    int mode;
    bool dagger; ///< true = creation
};

inline Ladder create(int mode) { return {mode, true}; }
inline Ladder annihilate(int mode) { return {mode, false}; }

/// coefficient * factors[0] * factors[1] * ... ; the last factor acts first.
/// An empty factor list is the identity.
struct FermionTerm {
    cplx coefficient{1.0, 0.0};
    std::vector<Ladder> factors;
};

class FermionOperator {
public:
    explicit FermionOperator(int n_modes);

    int n_modes() const noexcept { return n_modes_; }
    const std::vector<FermionTerm>& terms() const noexcept { return terms_; }

    FermionOperator& add(FermionTerm term);
    FermionOperator& add(cplx coefficient, std::vector<Ladder> factors);
    FermionOperator& operator+=(const FermionOperator& other);

    /// Hermitian conjugate: reversed factor order, daggers flipped, coefficients conjugated.
    FermionOperator adjoint() const;

private:
    int n_modes_;
    std::vector<FermionTerm> terms_;
};

FermionOperator operator+(FermionOperator a, const FermionOperator& b);

struct TermAction {
    double phase; ///< +1 or -1 from fermionic reordering; the coefficient is not included
    FockState state;
};

/// Applies the ladder string of a term (coefficient ignored) to a basis state.
/// Each ladder operator on mode k picks up (-1)^(occupied modes below k).
/// Returns nullopt when an annihilator meets an empty mode or a creator a filled one.
std::optional<TermAction> apply_fermion_term(const FermionTerm& term, const FockState& state);

struct BuildOptions {
    int qubit_cap = kDefaultQubitCap;
    double drop_tol = SparseOperator::kDefaultDropTol;
};

/// Matrix of the operator in the occupation basis, dimension 2^n_modes.
SparseOperator build_sparse(const FermionOperator& op, const BuildOptions& opts = {});

enum class Side { Left, Right, Cross };

/// Places an operator on the doubled 2n-mode space (left modes 0..n-1, right modes n..2n-1).
///
/// Left keeps mode indices. Right shifts modes by n and conjugates each
/// coefficient, which realises I (x) H^*. Cross expects an operator already on
/// 2n modes whose every term acts only on one pair (i, n+i), touching both,
/// and returns it unchanged.
FermionOperator embed_doubled(const FermionOperator& op, Side side);

} // namespace tfd
