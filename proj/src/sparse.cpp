#include "tfdforge/sparse.hpp"

#include "tfdforge/kernels.hpp"

#include <algorithm>

namespace tfd {

SparseOperator SparseOperator::from_triplets(std::size_t dim, std::vector<Triplet> triplets, double drop_tol) {
    std::stable_sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    SparseOperator op;
    op.dim_ = dim;
    op.row_ptr_.assign(dim + 1, 0);
    op.entries_.reserve(triplets.size());
    std::size_t i = 0;
    for (std::size_t r = 0; r < dim; ++r) {
        while (i < triplets.size() && triplets[i].row == r) {
            const std::uint32_t c = triplets[i].col;
            cplx v{0.0, 0.0};
            while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) v += triplets[i++].value;
            if (std::abs(v) >= drop_tol) op.entries_.push_back({c, v});
        }
        op.row_ptr_[r + 1] = op.entries_.size();
    }
    if (i != triplets.size()) throw ContractViolation("SparseOperator: triplet row index out of range");
    return op;
}

SparseOperator SparseOperator::from_rows(std::size_t dim, std::vector<std::vector<SparseEntry>> rows,
                                         double drop_tol) {
    require(rows.size() == dim, "SparseOperator::from_rows: row count must equal dim");
    SparseOperator op;
    op.dim_ = dim;
    op.row_ptr_.assign(dim + 1, 0);
    std::size_t total = 0;
    for (const auto& r : rows) total += r.size();
    op.entries_.reserve(total);
    for (std::size_t r = 0; r < dim; ++r) {
        for (const auto& e : rows[r])
            if (std::abs(e.value) >= drop_tol) op.entries_.push_back(e);
        op.row_ptr_[r + 1] = op.entries_.size();
    }
    return op;
}

SparseOperator SparseOperator::from_dense(const Eigen::MatrixXcd& m, double drop_tol) {
    require(m.rows() == m.cols(), "SparseOperator::from_dense: matrix must be square");
    std::vector<Triplet> t;
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            if (std::abs(m(r, c)) >= drop_tol)
                t.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), m(r, c)});
    return from_triplets(static_cast<std::size_t>(m.rows()), std::move(t), drop_tol);
}

SparseOperator SparseOperator::identity(std::size_t dim) {
    std::vector<Triplet> t;
    t.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i)
        t.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), cplx{1.0, 0.0}});
    return from_triplets(dim, std::move(t));
}

Statevector SparseOperator::apply(const Statevector& x) const {
    require(static_cast<std::size_t>(x.size()) == dim_, "SparseOperator::apply: dimension mismatch");
    Statevector y(x.size());
    kernels::spmv_parallel(*this, {x.data(), static_cast<std::size_t>(x.size())},
                           {y.data(), static_cast<std::size_t>(y.size())});
    return y;
}

cplx SparseOperator::expectation(const Statevector& x) const { return x.dot(apply(x)); }

Eigen::MatrixXcd SparseOperator::to_dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
    for (std::size_t r = 0; r < dim_; ++r)
        for (const auto& e : row(r)) m(static_cast<Eigen::Index>(r), e.col) = e.value;
    return m;
}

bool SparseOperator::is_hermitian(double tol) const {
    for (std::size_t r = 0; r < dim_; ++r) {
        for (const auto& e : row(r)) {
            const auto other = row(e.col);
            const auto it = std::lower_bound(other.begin(), other.end(), r,
                                             [](const SparseEntry& s, std::size_t c) { return s.col < c; });
            const cplx mirror = (it != other.end() && it->col == r) ? it->value : cplx{0.0, 0.0};
            if (std::abs(e.value - std::conj(mirror)) > tol) return false;
        }
    }
    return true;
}

SparseOperator SparseOperator::operator+(const SparseOperator& other) const {
    require(dim_ == other.dim_, "SparseOperator::operator+: dimension mismatch");
    std::vector<Triplet> t;
    t.reserve(nnz() + other.nnz());
    for (const auto* op : {this, &other})
        for (std::size_t r = 0; r < dim_; ++r)
            for (const auto& e : op->row(r)) t.push_back({static_cast<std::uint32_t>(r), e.col, e.value});
    return from_triplets(dim_, std::move(t));
}

SparseOperator SparseOperator::scaled(cplx factor) const {
    SparseOperator out = *this;
    for (auto& e : out.entries_) e.value *= factor;
    return out;
}

} // namespace tfd
