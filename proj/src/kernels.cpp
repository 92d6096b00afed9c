#include "tfdforge/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

namespace tfd::kernels {

namespace {

inline cplx row_dot(const SparseOperator& a, std::size_t r, const cplx* x) {
    cplx acc{0.0, 0.0};
    for (const auto& e : a.row(r)) acc += e.value * x[e.col];
    return acc;
}

inline double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

std::vector<SparseEntry> pauli_row(std::span<const XGroup> groups, std::uint64_t r, double drop_tol) {
    std::vector<SparseEntry> row;
    row.reserve(groups.size());
    for (const auto& g : groups) {
        const std::uint64_t c = r ^ g.x_mask;
        cplx v{0.0, 0.0};
        for (const auto& t : g.terms) v += t.weight * parity_sign(t.z_mask & c);
        if (std::abs(v) >= drop_tol) row.push_back({static_cast<std::uint32_t>(c), v});
    }
    std::sort(row.begin(), row.end(), [](const SparseEntry& a, const SparseEntry& b) { return a.col < b.col; });
    return row;
}

std::vector<double> cosine_table(std::size_t n) {
    std::vector<double> c(n);
    for (std::size_t k = 0; k < n; ++k)
        c[k] = std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    return c;
}

inline bool better(const ScanResult& a, const ScanResult& b) {
    return a.energy < b.energy || (a.energy == b.energy && a.bits < b.bits);
}

inline cplx term_contribution(const ForgedTermRef& t, std::span<const Eigen::MatrixXcd> left,
                              std::span<const Eigen::MatrixXcd> right, const Eigen::VectorXd& lambda) {
    const auto& l = left[static_cast<std::size_t>(t.left)];
    const auto& r = right[static_cast<std::size_t>(t.right)];
    const Eigen::Index k = lambda.size();
    cplx acc{0.0, 0.0};
    for (Eigen::Index j = 0; j < k; ++j) {
        cplx col{0.0, 0.0};
        for (Eigen::Index i = 0; i < k; ++i) col += lambda[i] * l(i, j) * r(i, j);
        acc += lambda[j] * col;
    }
    return t.coefficient * acc;
}

} // namespace

void spmv_serial(const SparseOperator& a, std::span<const cplx> x, std::span<cplx> y) {
    const auto n = static_cast<std::ptrdiff_t>(a.dim());
    for (std::ptrdiff_t r = 0; r < n; ++r) y[static_cast<std::size_t>(r)] = row_dot(a, static_cast<std::size_t>(r), x.data());
}

void spmv_parallel(const SparseOperator& a, std::span<const cplx> x, std::span<cplx> y) {
    const auto n = static_cast<std::ptrdiff_t>(a.dim());
#pragma omp parallel for schedule(static) if (n > 4096)
    for (std::ptrdiff_t r = 0; r < n; ++r) y[static_cast<std::size_t>(r)] = row_dot(a, static_cast<std::size_t>(r), x.data());
}

std::vector<std::vector<SparseEntry>> pauli_rows_serial(std::span<const XGroup> groups, std::size_t dim,
                                                        double drop_tol) {
    std::vector<std::vector<SparseEntry>> rows(dim);
    for (std::size_t r = 0; r < dim; ++r) rows[r] = pauli_row(groups, r, drop_tol);
    return rows;
}

std::vector<std::vector<SparseEntry>> pauli_rows_parallel(std::span<const XGroup> groups, std::size_t dim,
                                                          double drop_tol) {
    std::vector<std::vector<SparseEntry>> rows(dim);
    const auto n = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(dynamic, 256) if (n > 1024)
    for (std::ptrdiff_t r = 0; r < n; ++r)
        rows[static_cast<std::size_t>(r)] = pauli_row(groups, static_cast<std::uint64_t>(r), drop_tol);
    return rows;
}

void pauli_apply_serial(std::uint64_t x_mask, std::uint64_t z_mask, cplx weight, std::span<const cplx> in,
                        std::span<cplx> out) {
    for (std::size_t c = 0; c < in.size(); ++c) out[c ^ x_mask] = weight * parity_sign(z_mask & c) * in[c];
}

void pauli_apply_parallel(std::uint64_t x_mask, std::uint64_t z_mask, cplx weight, std::span<const cplx> in,
                          std::span<cplx> out) {
    const auto n = static_cast<std::ptrdiff_t>(in.size());
#pragma omp parallel for schedule(static) if (n > 8192)
    for (std::ptrdiff_t c = 0; c < n; ++c) {
        const auto u = static_cast<std::size_t>(c);
        out[u ^ x_mask] = weight * parity_sign(z_mask & u) * in[u];
    }
}

double occupation_energy(std::span<const double> omega, std::span<const double> cosines, double U,
                         std::uint64_t bits) {
    const std::size_t n = omega.size();
    double free = 0.0, count = 0.0, cos_sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if ((bits >> k) & 1u) {
            free += omega[k];
            count += 1.0;
            cos_sum += cosines[k];
        }
    }
    const double nd = static_cast<double>(n);
    const double rho = count / nd;
    const double alpha = cos_sum / nd;
    return free + U * nd * (rho * rho - alpha * alpha);
}

ScanResult occupation_scan_serial(std::span<const double> omega, double U) {
    const auto cosines = cosine_table(omega.size());
    const std::uint64_t total = std::uint64_t{1} << omega.size();
    ScanResult best{occupation_energy(omega, cosines, U, 0), 0};
    for (std::uint64_t b = 1; b < total; ++b) {
        const ScanResult cand{occupation_energy(omega, cosines, U, b), b};
        if (better(cand, best)) best = cand;
    }
    return best;
}

ScanResult occupation_scan_parallel(std::span<const double> omega, double U) {
    const auto cosines = cosine_table(omega.size());
    const auto total = static_cast<std::int64_t>(std::uint64_t{1} << omega.size());
    ScanResult best{occupation_energy(omega, cosines, U, 0), 0};
#pragma omp parallel if (total > 4096)
    {
        ScanResult local = best;
#pragma omp for schedule(static) nowait
        for (std::int64_t b = 1; b < total; ++b) {
            const ScanResult cand{occupation_energy(omega, cosines, U, static_cast<std::uint64_t>(b)),
                                  static_cast<std::uint64_t>(b)};
            if (better(cand, local)) local = cand;
        }
#pragma omp critical
        if (better(local, best)) best = local;
    }
    return best;
}

cplx forged_contraction_serial(std::span<const ForgedTermRef> terms, std::span<const Eigen::MatrixXcd> left,
                               std::span<const Eigen::MatrixXcd> right, const Eigen::VectorXd& lambda) {
    cplx total{0.0, 0.0};
    for (const auto& t : terms) total += term_contribution(t, left, right, lambda);
    return total;
}

cplx forged_contraction_parallel(std::span<const ForgedTermRef> terms, std::span<const Eigen::MatrixXcd> left,
                                 std::span<const Eigen::MatrixXcd> right, const Eigen::VectorXd& lambda) {
    std::vector<cplx> partial(terms.size());
    const auto n = static_cast<std::ptrdiff_t>(terms.size());
#pragma omp parallel for schedule(dynamic, 4) if (n > 64)
    for (std::ptrdiff_t a = 0; a < n; ++a)
        partial[static_cast<std::size_t>(a)] = term_contribution(terms[static_cast<std::size_t>(a)], left, right, lambda);
    cplx total{0.0, 0.0};
    for (const auto& p : partial) total += p;
    return total;
}

} // namespace tfd::kernels
