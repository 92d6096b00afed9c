#pragma once

// Data-parallel inner loops. Every kernel has a serial reference and an
// OpenMP variant; both produce bit-identical results (each output element is
// computed by one thread in a fixed order, and reductions go through
// per-item partials summed serially).

#include "tfdforge/common.hpp"
#include "tfdforge/sparse.hpp"

#include <span>
#include <vector>

namespace tfd::kernels {

// ---------------------------------------------------------------------------
// Sparse matrix-vector product

void spmv_serial(const SparseOperator& a, std::span<const cplx> x, std::span<cplx> y);
void spmv_parallel(const SparseOperator& a, std::span<const cplx> x, std::span<cplx> y);

// ---------------------------------------------------------------------------
// Pauli-sum assembly: all strings sharing an X mask land on the same
// off-diagonal (col = row ^ x_mask), so each row is a sum over groups.

struct PhasedZ {
    std::uint64_t z_mask;
    cplx weight; ///< coefficient times i^{popcount(x & z)}
};

struct XGroup {
    std::uint64_t x_mask;
    std::vector<PhasedZ> terms;
};

std::vector<std::vector<SparseEntry>> pauli_rows_serial(std::span<const XGroup> groups,
                                                        std::size_t dim, double drop_tol);
std::vector<std::vector<SparseEntry>> pauli_rows_parallel(std::span<const XGroup> groups,
                                                          std::size_t dim, double drop_tol);

/// out = P in for a single Pauli string given by its masks and phased weight.
void pauli_apply_serial(std::uint64_t x_mask, std::uint64_t z_mask, cplx weight,
                        std::span<const cplx> in, std::span<cplx> out);
void pauli_apply_parallel(std::uint64_t x_mask, std::uint64_t z_mask, cplx weight,
                          std::span<const cplx> in, std::span<cplx> out);

// ---------------------------------------------------------------------------
// Mean-field occupation scan over all 2^N patterns.
// E(b) = sum_k w_k b_k + U N (rho^2 - alpha^2), rho = |b|/N,
// alpha = (1/N) sum_k cos(2 pi k / N) b_k.

struct ScanResult {
    double energy;
    std::uint64_t bits;
};

double occupation_energy(std::span<const double> omega, std::span<const double> cosines,
                         double U, std::uint64_t bits);

ScanResult occupation_scan_serial(std::span<const double> omega, double U);
ScanResult occupation_scan_parallel(std::span<const double> omega, double U);

// ---------------------------------------------------------------------------
// Forged double sum:  sum_a c_a sum_{ij} l_i l_j L[a](i,j) R[a](i,j)

struct ForgedTermRef {
    double coefficient;
    int left;  ///< index into the left matrix-element table
    int right; ///< index into the right matrix-element table
};

cplx forged_contraction_serial(std::span<const ForgedTermRef> terms,
                               std::span<const Eigen::MatrixXcd> left,
                               std::span<const Eigen::MatrixXcd> right,
                               const Eigen::VectorXd& lambda);
cplx forged_contraction_parallel(std::span<const ForgedTermRef> terms,
                                 std::span<const Eigen::MatrixXcd> left,
                                 std::span<const Eigen::MatrixXcd> right,
                                 const Eigen::VectorXd& lambda);

} // namespace tfd::kernels
