#pragma once
// Dense reference constructions built from Kronecker products, independent
// of the library's sparse assembly. Qubit q is bit q of the basis index.

#include "tfdforge/fock.hpp"
#include "tfdforge/pauli.hpp"

#include <Eigen/Dense>

#include <random>
#include <span>
#include <stdexcept>
#include <string>

namespace oracle {

using tfd::cplx;
using Mat = Eigen::MatrixXcd;

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Mat single(char letter) {
    Mat m = Mat::Zero(2, 2);
    const cplx i{0.0, 1.0};
    switch (letter) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    case '-': m << 0, 1, 0, 0; break; // |0><1|, annihilates an occupied mode
    case '+': m << 0, 0, 1, 0; break;
    default: throw std::invalid_argument("unknown letter");
    }
    return m;
}

/// letters[q] acts on qubit q.
inline Mat string_dense(const std::string& letters) {
    Mat out = Mat::Identity(1, 1);
    for (char c : letters) out = kron(single(c), out);
    return out;
}

inline Mat pauli_dense(const tfd::PauliString& p) { return p.coefficient() * string_dense(p.letters()); }

inline Mat pauli_sum_dense(std::span<const tfd::PauliString> ps, int n) {
    Mat out = Mat::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto& p : ps) out += pauli_dense(p);
    return out;
}

/// Jordan-Wigner ladder matrix: Z on every qubit below k.
inline Mat ladder(int n, int k, bool dagger) {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (int q = 0; q < k; ++q) s[static_cast<std::size_t>(q)] = 'Z';
    s[static_cast<std::size_t>(k)] = dagger ? '+' : '-';
    return string_dense(s);
}

inline Mat fermion_dense(const tfd::FermionOperator& op) {
    const int n = op.n_modes();
    const auto dim = Eigen::Index{1} << n;
    Mat out = Mat::Zero(dim, dim);
    for (const auto& t : op.terms()) {
        Mat m = Mat::Identity(dim, dim);
        for (const auto& f : t.factors) m = m * ladder(n, f.mode, f.dagger);
        out += t.coefficient * m;
    }
    return out;
}

/// exp(-i t H) for Hermitian H.
inline Mat expm_i(const Mat& h, double t) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()));
    Eigen::VectorXcd phases(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases[i] = std::exp(cplx{0.0, -t * es.eigenvalues()[i]});
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Eigen::VectorXd sorted_eigenvalues(const Mat& h) {
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (h + h.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

/// Diagonal free Hamiltonian sum_k w_k n_k on n modes.
inline tfd::FermionOperator number_sum(const std::vector<double>& w) {
    tfd::FermionOperator op(static_cast<int>(w.size()));
    for (std::size_t k = 0; k < w.size(); ++k)
        op.add(w[k], {tfd::create(static_cast<int>(k)), tfd::annihilate(static_cast<int>(k))});
    return op;
}

/// Skip-Z image of sum_i c_i (a^L_i a^R_i - a^{L+}_i a^{R+}_i) on 2n qubits:
/// -c_i (s^-_i s^-_{n+i} + s^+_i s^+_{n+i}).
inline Mat pair_coupling_dense(const std::vector<double>& c) {
    const int n = static_cast<int>(c.size());
    const auto dim = Eigen::Index{1} << (2 * n);
    Mat out = Mat::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        std::string lo(static_cast<std::size_t>(2 * n), 'I'), hi = lo;
        lo[static_cast<std::size_t>(i)] = lo[static_cast<std::size_t>(n + i)] = '-';
        hi[static_cast<std::size_t>(i)] = hi[static_cast<std::size_t>(n + i)] = '+';
        out -= c[static_cast<std::size_t>(i)] * (string_dense(lo) + string_dense(hi));
    }
    return out;
}

/// sum_k w_k n_k placed on qubits [offset, offset + n) of a total register.
inline Mat number_dense(const std::vector<double>& w, int offset, int total) {
    const auto dim = Eigen::Index{1} << total;
    Mat out = Mat::Zero(dim, dim);
    for (std::size_t k = 0; k < w.size(); ++k) {
        std::string s(static_cast<std::size_t>(total), 'I');
        s[k + static_cast<std::size_t>(offset)] = 'n';
        Mat m = Mat::Identity(1, 1);
        for (char c : s) {
            Mat f = c == 'n' ? Mat(single('+') * single('-')) : single(c);
            m = kron(f, m);
        }
        out += w[k] * m;
    }
    return out;
}

inline Mat random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Mat m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = cplx{g(rng), g(rng)};
    return 0.5 * (m + m.adjoint());
}

inline Eigen::VectorXcd random_state(Eigen::Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Eigen::VectorXcd v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) v[i] = cplx{g(rng), g(rng)};
    return v.normalized();
}

} // namespace oracle
