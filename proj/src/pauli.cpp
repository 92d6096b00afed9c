#include "tfdforge/pauli.hpp"

#include "tfdforge/kernels.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>

namespace tfd {

namespace {

constexpr std::array<cplx, 4> kIPow{cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}};

std::uint64_t low_mask(int n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

} // namespace

PauliString::PauliString(int n_qubits, std::uint64_t x_mask, std::uint64_t z_mask, cplx coefficient)
    : n_qubits_(n_qubits), x_(x_mask), z_(z_mask), coef_(coefficient) {
    require(n_qubits > 0 && n_qubits <= 63, "PauliString: qubit count must be in [1, 63]");
    require(((x_mask | z_mask) & ~low_mask(n_qubits)) == 0, "PauliString: mask exceeds qubit count");
}

PauliString PauliString::from_letters(std::string_view letters, cplx coefficient) {
    std::uint64_t x = 0, z = 0;
    for (std::size_t q = 0; q < letters.size(); ++q) {
        const std::uint64_t bit = std::uint64_t{1} << q;
        switch (letters[q]) {
        case 'I': break;
        case 'X': x |= bit; break;
        case 'Y': x |= bit; z |= bit; break;
        case 'Z': z |= bit; break;
        default: throw ContractViolation("PauliString: letters must be I, X, Y or Z");
        }
    }
    return PauliString(static_cast<int>(letters.size()), x, z, coefficient);
}

PauliString PauliString::identity(int n_qubits, cplx coefficient) { return PauliString(n_qubits, 0, 0, coefficient); }

char PauliString::letter(int qubit) const {
    const bool xb = (x_ >> qubit) & 1u, zb = (z_ >> qubit) & 1u;
    return xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
}

std::string PauliString::letters() const {
    std::string s(static_cast<std::size_t>(n_qubits_), 'I');
    for (int q = 0; q < n_qubits_; ++q) s[static_cast<std::size_t>(q)] = letter(q);
    return s;
}

int PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

PauliString PauliString::conjugated() const {
    const double sign = (y_count() & 1) ? -1.0 : 1.0;
    return PauliString(n_qubits_, x_, z_, sign * std::conj(coef_));
}

PauliString PauliString::slice(int first, int count) const {
    const std::uint64_t m = low_mask(count);
    return PauliString(count, (x_ >> first) & m, (z_ >> first) & m, 1.0);
}

cplx PauliString::phased_weight() const noexcept { return coef_ * kIPow[static_cast<std::size_t>(y_count() & 3)]; }

PauliString operator*(const PauliString& a, const PauliString& b) {
    require(a.n_qubits() == b.n_qubits(), "Pauli product: qubit count mismatch");
    // P = c i^{|x&z|} X^x Z^z, and Z^z1 X^x2 = (-1)^{|z1&x2|} X^x2 Z^z1.
    const std::uint64_t x = a.x_mask() ^ b.x_mask();
    const std::uint64_t z = a.z_mask() ^ b.z_mask();
    const int e = a.y_count() + b.y_count() + 2 * std::popcount(a.z_mask() & b.x_mask()) - std::popcount(x & z);
    const cplx phase = kIPow[static_cast<std::size_t>(((e % 4) + 4) % 4)];
    return PauliString(a.n_qubits(), x, z, a.coefficient() * b.coefficient() * phase);
}

bool commutes(const PauliString& a, const PauliString& b) {
    return (std::popcount((a.x_mask() & b.z_mask()) ^ (a.z_mask() & b.x_mask())) & 1) == 0;
}

std::vector<PauliString> merge_like(std::span<const PauliString> strings, double tol) {
    std::vector<PauliString> out;
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> index;
    for (const auto& s : strings) {
        const auto key = std::make_pair(s.x_mask(), s.z_mask());
        if (auto it = index.find(key); it != index.end()) {
            auto& t = out[it->second];
            t.set_coefficient(t.coefficient() + s.coefficient());
        } else {
            index.emplace(key, out.size());
            out.push_back(s);
        }
    }
    std::erase_if(out, [tol](const PauliString& s) { return std::abs(s.coefficient()) < tol; });
    return out;
}

std::vector<PauliString> jordan_wigner(const FermionOperator& op, bool skip_z_strings) {
    const int n = op.n_modes();
    std::vector<PauliString> all;
    for (const auto& term : op.terms()) {
        std::uint64_t touched = 0;
        for (const auto& f : term.factors) touched |= std::uint64_t{1} << f.mode;

        std::vector<PauliString> acc{PauliString::identity(n, term.coefficient)};
        for (const auto& f : term.factors) {
            const std::uint64_t bit = std::uint64_t{1} << f.mode;
            std::uint64_t zs = bit - 1;
            if (skip_z_strings) zs &= touched;
            // a = Z_{<k} (X + iY)/2, a^dagger = Z_{<k} (X - iY)/2
            const PauliString xs(n, bit, zs, 0.5);
            const PauliString ys(n, bit, zs | bit, f.dagger ? cplx{0.0, -0.5} : cplx{0.0, 0.5});
            // Z_{<k} and the on-site letter commute, so the product is the combined mask.
            std::vector<PauliString> next;
            next.reserve(acc.size() * 2);
            for (const auto& p : acc) {
                next.push_back(p * xs);
                next.push_back(p * ys);
            }
            acc = merge_like(next, 0.0);
        }
        all.insert(all.end(), acc.begin(), acc.end());
    }
    return merge_like(all);
}

SparseOperator build_sparse(std::span<const PauliString> strings, int n_qubits, const BuildOptions& opts) {
    if (n_qubits > opts.qubit_cap)
        throw ResourceError("build_sparse: " + std::to_string(n_qubits) + " qubits exceed the qubit cap of " +
                            std::to_string(opts.qubit_cap));
    std::map<std::uint64_t, std::size_t> index;
    std::vector<kernels::XGroup> groups;
    for (const auto& s : strings) {
        require(s.n_qubits() == n_qubits, "build_sparse: Pauli string qubit count mismatch");
        auto [it, inserted] = index.emplace(s.x_mask(), groups.size());
        if (inserted) groups.push_back({s.x_mask(), {}});
        groups[it->second].terms.push_back({s.z_mask(), s.phased_weight()});
    }
    const std::size_t dim = std::size_t{1} << n_qubits;
    return SparseOperator::from_rows(dim, kernels::pauli_rows_parallel(groups, dim, opts.drop_tol), opts.drop_tol);
}

Statevector apply_pauli(const PauliString& p, const Statevector& psi) {
    require(psi.size() == (Eigen::Index{1} << p.n_qubits()), "apply_pauli: dimension mismatch");
    Statevector out(psi.size());
    kernels::pauli_apply_parallel(p.x_mask(), p.z_mask(), p.phased_weight(),
                                  {psi.data(), static_cast<std::size_t>(psi.size())},
                                  {out.data(), static_cast<std::size_t>(out.size())});
    return out;
}

} // namespace tfd
