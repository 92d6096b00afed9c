#pragma once

#include "tfdforge/common.hpp"

#include <span>
#include <vector>

namespace tfd {

struct SparseEntry {
    std::uint32_t col;
    cplx value;
};

struct Triplet {
    std::uint32_t row;
    std::uint32_t col;
    cplx value;
};

/// Row-compressed complex matrix on a 2^n dimensional space.
///
/// Entries within a row are sorted by column and unique. Entries whose
/// magnitude falls below the drop tolerance given at construction are absent.
class SparseOperator {
public:
    static constexpr double kDefaultDropTol = 1e-14;

    SparseOperator() = default;

    /// Sums duplicate (row, col) triplets in input order and drops small entries.
    static SparseOperator from_triplets(std::size_t dim, std::vector<Triplet> triplets,
                                        double drop_tol = kDefaultDropTol);

    /// Adopts already-compressed rows. Each row must be sorted with unique columns.
    static SparseOperator from_rows(std::size_t dim, std::vector<std::vector<SparseEntry>> rows,
                                    double drop_tol = kDefaultDropTol);

    static SparseOperator from_dense(const Eigen::MatrixXcd& m, double drop_tol = kDefaultDropTol);

    static SparseOperator identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t nnz() const noexcept { return entries_.size(); }

    std::span<const SparseEntry> row(std::size_t r) const {
        return {entries_.data() + row_ptr_[r], entries_.data() + row_ptr_[r + 1]};
    }

    /// y = A x using the OpenMP row-parallel kernel.
    Statevector apply(const Statevector& x) const;

    /// <x|A|x> (not normalized).
    cplx expectation(const Statevector& x) const;

    Eigen::MatrixXcd to_dense() const;

    bool is_hermitian(double tol = 1e-12) const;

    SparseOperator operator+(const SparseOperator& other) const;
    SparseOperator scaled(cplx factor) const;

    const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
    const std::vector<SparseEntry>& entries() const noexcept { return entries_; }

private:
    std::size_t dim_ = 0;
    std::vector<std::size_t> row_ptr_{0};
    std::vector<SparseEntry> entries_;
};

} // namespace tfd
