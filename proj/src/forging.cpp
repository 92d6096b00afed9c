#include "tfdforge/forging.hpp"

#include "tfdforge/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace tfd {

namespace {

double real_coefficient(const PauliString& p, const char* where) {
    const double scale = std::max(1.0, std::abs(p.coefficient()));
    if (std::abs(p.coefficient().imag()) > 1e-12 * scale)
        throw ContractViolation(std::string(where) + ": Pauli coefficients must be real (Hermitian operator)");
    return p.coefficient().real();
}

/// psi <- exp(-i phi P) psi = cos(phi) psi - i sin(phi) P psi, P a unit-coefficient string.
void rotate(Eigen::MatrixXcd& m, const PauliString& p, double phi) {
    const cplx w = p.phased_weight() / p.coefficient();
    const cplx s{0.0, -std::sin(phi)};
    const double c = std::cos(phi);
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
        auto in = m.col(col);
        auto dst = out.col(col);
        kernels::pauli_apply_serial(p.x_mask(), p.z_mask(), w, {in.data(), static_cast<std::size_t>(in.size())},
                                    {dst.data(), static_cast<std::size_t>(dst.size())});
    }
    m = c * m + s * out;
}

void apply_layers(const HVALayout& layout, const Eigen::VectorXd& theta, Eigen::MatrixXcd& m) {
    require(theta.size() == layout.n_params(), "apply_ansatz: theta size must equal layers * sets");
    for (int l = 0; l < layout.layers; ++l)
        for (int s = 0; s < layout.n_sets(); ++s) {
            const double angle = theta[layout.param_index(l, s)];
            for (const auto& p : layout.sets[static_cast<std::size_t>(s)])
                rotate(m, p, angle * p.coefficient().real());
        }
}

/// Vector of D x D matrix m in the (left low bits, right high bits) convention.
Statevector vec(const Eigen::MatrixXcd& m) {
    return Eigen::Map<const Statevector>(m.data(), m.size());
}

} // namespace

bool pauli_order(const PauliString& a, const PauliString& b) {
    const auto la = a.letters(), lb = b.letters();
    if (la != lb) return la < lb;
    if (a.coefficient().real() != b.coefficient().real()) return a.coefficient().real() < b.coefficient().real();
    return a.coefficient().imag() < b.coefficient().imag();
}

HVALayout partition_commuting(std::span<const PauliString> paulis, std::span<const PauliString> h2_strings,
                              int layers) {
    require(layers >= 1, "partition_commuting: layers must be >= 1");
    require(!paulis.empty(), "partition_commuting: empty Pauli list");
    for (std::size_t i = 0; i < h2_strings.size(); ++i)
        for (std::size_t j = i + 1; j < h2_strings.size(); ++j)
            require(commutes(h2_strings[i], h2_strings[j]),
                    "partition_commuting: quadratic strings must commute with each other");

    HVALayout layout;
    layout.n_qubits = paulis.front().n_qubits();
    layout.layers = layers;

    std::vector<PauliString> first, rest;
    for (const auto& p : paulis) {
        require(p.n_qubits() == layout.n_qubits, "partition_commuting: qubit count mismatch");
        real_coefficient(p, "partition_commuting");
        const bool quadratic = std::any_of(h2_strings.begin(), h2_strings.end(),
                                           [&](const PauliString& q) { return q.same_letters(p); });
        (quadratic ? first : rest).push_back(p);
    }
    std::sort(first.begin(), first.end(), pauli_order);
    std::sort(rest.begin(), rest.end(), pauli_order);

    layout.sets.push_back(std::move(first));
    const std::size_t offset = 1;
    for (const auto& p : rest) {
        bool placed = false;
        for (std::size_t s = offset; s < layout.sets.size() && !placed; ++s) {
            auto& set = layout.sets[s];
            if (std::all_of(set.begin(), set.end(), [&](const PauliString& q) { return commutes(p, q); })) {
                set.push_back(p);
                placed = true;
            }
        }
        if (!placed) layout.sets.push_back({p});
    }
    if (layout.sets.front().empty()) layout.sets.erase(layout.sets.begin());
    return layout;
}

Statevector apply_ansatz(const HVALayout& layout, const Eigen::VectorXd& theta, const FockState& b) {
    require(b.n_modes() == layout.n_qubits, "apply_ansatz: basis state size mismatch");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index{1} << layout.n_qubits, 1);
    m(static_cast<Eigen::Index>(b.bits()), 0) = 1.0;
    apply_layers(layout, theta, m);
    return m.col(0);
}

Eigen::MatrixXcd ansatz_unitary(const HVALayout& layout, const Eigen::VectorXd& theta) {
    const Eigen::Index dim = Eigen::Index{1} << layout.n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    apply_layers(layout, theta, m);
    return m;
}

std::vector<double> energy_estimators(const HVALayout& layout, const Eigen::VectorXd& theta, const SparseOperator& h,
                                      std::span<const FockState> basis) {
    require(h.dim() == (std::size_t{1} << layout.n_qubits), "energy_estimators: Hamiltonian dimension mismatch");
    const Eigen::MatrixXcd u = ansatz_unitary(layout, theta);
    std::vector<double> energies;
    energies.reserve(basis.size());
    for (const auto& b : basis) {
        require(b.n_modes() == layout.n_qubits, "energy_estimators: basis state size mismatch");
        const Statevector f = u.col(static_cast<Eigen::Index>(b.bits()));
        const cplx e = f.dot(h.apply(f));
        if (std::abs(e.imag()) > 1e-10)
            throw HermiticityError("energy_estimators: imaginary expectation value", std::abs(e.imag()));
        energies.push_back(e.real());
    }
    return energies;
}

std::vector<int> SchmidtWeights::retained() const {
    std::vector<int> idx;
    for (Eigen::Index i = 0; i < lambda.size(); ++i)
        if (lambda[i] > 0.0) idx.push_back(static_cast<int>(i));
    return idx;
}

SchmidtWeights schmidt_weights(std::span<const double> energies, double beta, int rank) {
    require(beta >= 0.0, "schmidt_weights: beta must be non-negative");
    require(!energies.empty(), "schmidt_weights: no energies");
    require(rank >= 1 && rank <= static_cast<int>(energies.size()), "schmidt_weights: rank out of range");

    std::vector<int> order(energies.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return energies[static_cast<std::size_t>(a)] < energies[static_cast<std::size_t>(b)];
    });
    const double e_min = energies[static_cast<std::size_t>(order.front())];

    SchmidtWeights w;
    w.energies.assign(energies.begin(), energies.end());
    w.beta = beta;
    w.rank = rank;
    w.lambda = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(energies.size()));
    for (int r = 0; r < rank; ++r) {
        const int i = order[static_cast<std::size_t>(r)];
        w.lambda[i] = std::exp(-beta * (energies[static_cast<std::size_t>(i)] - e_min) / 2.0);
    }
    w.lambda /= w.lambda.norm();
    return w;
}

LRTermDecomposition decompose_lr(std::span<const PauliString> paulis, int n_qubits_per_side) {
    LRTermDecomposition d;
    d.n_qubits = n_qubits_per_side;
    d.terms.reserve(paulis.size());
    for (const auto& p : paulis) {
        require(p.n_qubits() == 2 * n_qubits_per_side, "decompose_lr: string does not span both sides");
        d.terms.push_back({real_coefficient(p, "decompose_lr"), p.slice(0, n_qubits_per_side),
                           p.slice(n_qubits_per_side, n_qubits_per_side)});
    }
    return d;
}

LRTermDecomposition decompose_lr(const TotalHamiltonian& h_total) {
    return decompose_lr(h_total.paulis, h_total.n_modes);
}

double forged_expectation(const LRTermDecomposition& decomp, const HVALayout& layout, const Eigen::VectorXd& theta,
                          const SchmidtWeights& weights) {
    require(decomp.n_qubits == layout.n_qubits, "forged_expectation: qubit count mismatch");
    const Eigen::Index dim = Eigen::Index{1} << layout.n_qubits;
    require(weights.lambda.size() == dim, "forged_expectation: weights must cover the full basis");

    const Eigen::MatrixXcd u = ansatz_unitary(layout, theta);
    const auto kept = weights.retained();
    const auto k = static_cast<Eigen::Index>(kept.size());
    Eigen::MatrixXcd frames(dim, k);
    Eigen::VectorXd lambda(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        frames.col(i) = u.col(kept[static_cast<std::size_t>(i)]);
        lambda[i] = weights.lambda[kept[static_cast<std::size_t>(i)]];
    }

    // One matrix-element table per distinct one-sided string.
    std::map<std::pair<std::uint64_t, std::uint64_t>, int> left_index, right_index;
    std::vector<PauliString> left_strings, right_strings;
    std::vector<kernels::ForgedTermRef> refs;
    refs.reserve(decomp.terms.size());
    auto intern = [](auto& index, auto& list, const PauliString& p) {
        auto [it, inserted] = index.emplace(std::make_pair(p.x_mask(), p.z_mask()), static_cast<int>(list.size()));
        if (inserted) list.push_back(p);
        return it->second;
    };
    for (const auto& t : decomp.terms)
        refs.push_back({t.coefficient, intern(left_index, left_strings, t.left), intern(right_index, right_strings, t.right)});

    auto elements = [&](const std::vector<PauliString>& strings, bool conjugate_side) {
        std::vector<Eigen::MatrixXcd> tables(strings.size());
        const auto n = static_cast<std::ptrdiff_t>(strings.size());
#pragma omp parallel for schedule(dynamic) if (n > 16)
        for (std::ptrdiff_t s = 0; s < n; ++s) {
            const auto& p = strings[static_cast<std::size_t>(s)];
            Eigen::MatrixXcd pf(dim, k);
            for (Eigen::Index j = 0; j < k; ++j) {
                auto in = frames.col(j);
                auto dst = pf.col(j);
                kernels::pauli_apply_serial(p.x_mask(), p.z_mask(), p.phased_weight(),
                                            {in.data(), static_cast<std::size_t>(dim)},
                                            {dst.data(), static_cast<std::size_t>(dim)});
            }
            Eigen::MatrixXcd m = frames.adjoint() * pf;
            // <f_i^*|O|f_j^*> = conj(<f_i|conj(O)|f_j>), and conj(O) = (-1)^{#Y} O for a string.
            if (conjugate_side) m = ((p.y_count() & 1) ? -1.0 : 1.0) * m.conjugate();
            tables[static_cast<std::size_t>(s)] = std::move(m);
        }
        return tables;
    };
    const auto left = elements(left_strings, false);
    const auto right = elements(right_strings, true);

    const cplx value = kernels::forged_contraction_parallel(refs, left, right, lambda);
    if (std::abs(value.imag()) > 1e-8)
        throw HermiticityError("forged_expectation: imaginary residue", std::abs(value.imag()));
    return value.real();
}

Statevector assemble_forged_state(const HVALayout& layout, const Eigen::VectorXd& theta,
                                  const SchmidtWeights& weights) {
    if (2 * layout.n_qubits > kDefaultQubitCap)
        throw ResourceError("assemble_forged_state: " + std::to_string(2 * layout.n_qubits) +
                            " qubits exceed the qubit cap");
    const Eigen::MatrixXcd u = ansatz_unitary(layout, theta);
    require(weights.lambda.size() == u.cols(), "assemble_forged_state: weights must cover the full basis");
    const Eigen::MatrixXcd m = u * weights.lambda.cast<cplx>().asDiagonal() * u.adjoint();
    return vec(m);
}

ForgedEvaluation evaluate_forged(const ForgedProblem& problem, const Eigen::VectorXd& theta) {
    const auto basis = computational_basis(problem.layout.n_qubits);
    ForgedEvaluation ev;
    ev.energies = energy_estimators(problem.layout, theta, problem.system, basis);
    const int rank = problem.rank > 0 ? problem.rank : static_cast<int>(basis.size());
    ev.weights = schmidt_weights(ev.energies, problem.beta, rank);
    ev.cost = forged_expectation(problem.decomp, problem.layout, theta, ev.weights);
    return ev;
}

double forged_cost(const ForgedProblem& problem, const Eigen::VectorXd& theta) {
    return evaluate_forged(problem, theta).cost;
}

} // namespace tfd
