#include "tfdforge/fock.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace tfd {

FockState::FockState(std::uint64_t bits, int n_modes) : bits_(bits), n_modes_(n_modes) {
    require(n_modes > 0 && n_modes <= 63, "FockState: n_modes must be in [1, 63]");
    require(bits < (std::uint64_t{1} << n_modes), "FockState: bits exceed 2^n_modes");
}

int FockState::particle_count() const noexcept { return std::popcount(bits_); }

std::vector<FockState> computational_basis(int n_modes) {
    std::vector<FockState> basis;
    const std::uint64_t dim = std::uint64_t{1} << n_modes;
    basis.reserve(dim);
    for (std::uint64_t b = 0; b < dim; ++b) basis.emplace_back(b, n_modes);
    return basis;
}

FermionOperator::FermionOperator(int n_modes) : n_modes_(n_modes) {
    require(n_modes > 0 && n_modes <= 63, "FermionOperator: n_modes must be in [1, 63]");
}

FermionOperator& FermionOperator::add(FermionTerm term) {
    for (const auto& f : term.factors)
        require(f.mode >= 0 && f.mode < n_modes_, "FermionOperator: ladder mode out of range");
    terms_.push_back(std::move(term));
    return *this;
}

FermionOperator& FermionOperator::add(cplx coefficient, std::vector<Ladder> factors) {
    return add(FermionTerm{coefficient, std::move(factors)});
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
    require(other.n_modes_ == n_modes_, "FermionOperator: mode count mismatch in sum");
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    return *this;
}

FermionOperator FermionOperator::adjoint() const {
    FermionOperator out(n_modes_);
    for (const auto& t : terms_) {
        FermionTerm a{std::conj(t.coefficient), {}};
        a.factors.reserve(t.factors.size());
        for (auto it = t.factors.rbegin(); it != t.factors.rend(); ++it) a.factors.push_back({it->mode, !it->dagger});
        out.terms_.push_back(std::move(a));
    }
    return out;
}

FermionOperator operator+(FermionOperator a, const FermionOperator& b) {
    a += b;
    return a;
}

std::optional<TermAction> apply_fermion_term(const FermionTerm& term, const FockState& state) {
    std::uint64_t bits = state.bits();
    double phase = 1.0;
    for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
        if (it->mode < 0 || it->mode >= state.n_modes())
            throw ContractViolation("apply_fermion_term: mode " + std::to_string(it->mode) + " out of range");
        const std::uint64_t bit = std::uint64_t{1} << it->mode;
        const bool filled = bits & bit;
        if (filled == it->dagger) return std::nullopt;
        if (std::popcount(bits & (bit - 1)) & 1) phase = -phase;
        bits ^= bit;
    }
    return TermAction{phase, FockState(bits, state.n_modes())};
}

SparseOperator build_sparse(const FermionOperator& op, const BuildOptions& opts) {
    if (op.n_modes() > opts.qubit_cap)
        throw ResourceError("build_sparse: " + std::to_string(op.n_modes()) + " modes exceed the qubit cap of " +
                            std::to_string(opts.qubit_cap));
    const std::size_t dim = std::size_t{1} << op.n_modes();
    std::vector<std::vector<Triplet>> per_column(dim);
    const auto n = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(dynamic, 64) if (n > 1024)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
        const FockState in(static_cast<std::uint64_t>(s), op.n_modes());
        auto& col = per_column[static_cast<std::size_t>(s)];
        for (const auto& term : op.terms()) {
            if (auto r = apply_fermion_term(term, in))
                col.push_back({static_cast<std::uint32_t>(r->state.bits()), static_cast<std::uint32_t>(s),
                               term.coefficient * r->phase});
        }
    }
    std::vector<Triplet> all;
    for (auto& c : per_column) all.insert(all.end(), c.begin(), c.end());
    return SparseOperator::from_triplets(dim, std::move(all), opts.drop_tol);
}

FermionOperator embed_doubled(const FermionOperator& op, Side side) {
    const int n = op.n_modes();
    switch (side) {
    case Side::Left:
    case Side::Right: {
        FermionOperator out(2 * n);
        const int shift = side == Side::Right ? n : 0;
        for (const auto& t : op.terms()) {
            FermionTerm e{side == Side::Right ? std::conj(t.coefficient) : t.coefficient, {}};
            for (const auto& f : t.factors) e.factors.push_back({f.mode + shift, f.dagger});
            out.add(std::move(e));
        }
        return out;
    }
    case Side::Cross: {
        require(n % 2 == 0, "embed_doubled(Cross): operator must live on an even number of modes");
        const int half = n / 2;
        for (const auto& t : op.terms()) {
            require(!t.factors.empty(), "embed_doubled(Cross): identity term is not an L-R pair term");
            const int pair = t.factors.front().mode % half;
            bool has_left = false, has_right = false;
            for (const auto& f : t.factors) {
                require(f.mode % half == pair, "embed_doubled(Cross): term mixes different mode pairs");
                (f.mode < half ? has_left : has_right) = true;
            }
            require(has_left && has_right, "embed_doubled(Cross): term must act on both sides of its pair");
        }
        return op;
    }
    }
    throw ContractViolation("embed_doubled: unknown side");
}

} // namespace tfd
