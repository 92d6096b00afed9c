// Serial vs OpenMP kernels on realistic inputs.
#include "tfdforge/doubled.hpp"
#include "tfdforge/kernels.hpp"
#include "tfdforge/models.hpp"

#include <benchmark/benchmark.h>

#include <bit>
#include <map>
#include <random>

using namespace tfd;

namespace {

TotalHamiltonian doubled_hubbard(int n) {
    const HubbardParams p{n, 1.0, 0.0, 1.0};
    return build_h_total(hubbard_momentum(p), free_frequencies(p), 1.26);
}

std::vector<kernels::XGroup> groups_of(const std::vector<PauliString>& paulis) {
    static const cplx powers[4] = {1.0, cplx(0, 1), -1.0, cplx(0, -1)};
    std::map<std::uint64_t, kernels::XGroup> by_x;
    for (const auto& p : paulis) {
        auto& g = by_x[p.x_mask()];
        g.x_mask = p.x_mask();
        g.terms.push_back({p.z_mask(), p.coefficient() * powers[std::popcount(p.x_mask() & p.z_mask()) % 4]});
    }
    std::vector<kernels::XGroup> out;
    for (auto& [x, g] : by_x) out.push_back(std::move(g));
    return out;
}

Statevector random_vector(std::size_t dim) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g;
    Statevector v(static_cast<Eigen::Index>(dim));
    for (auto& x : v) x = cplx(g(rng), g(rng));
    return v.normalized();
}

template <bool Parallel>
void BM_spmv(benchmark::State& state) {
    const auto h = doubled_hubbard(static_cast<int>(state.range(0)));
    const Statevector x = random_vector(h.op.dim());
    Statevector y(x.size());
    const std::span<const cplx> in{x.data(), static_cast<std::size_t>(x.size())};
    const std::span<cplx> out{y.data(), static_cast<std::size_t>(y.size())};
    for (auto _ : state) {
        if constexpr (Parallel) kernels::spmv_parallel(h.op, in, out);
        else kernels::spmv_serial(h.op, in, out);
        benchmark::DoNotOptimize(y.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(h.op.nnz()));
}

template <bool Parallel>
void BM_pauli_rows(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto groups = groups_of(doubled_hubbard(n).paulis);
    const std::size_t dim = std::size_t{1} << (2 * n);
    for (auto _ : state) {
        auto rows = Parallel ? kernels::pauli_rows_parallel(groups, dim, 1e-14) : kernels::pauli_rows_serial(groups, dim, 1e-14);
        benchmark::DoNotOptimize(rows.data());
    }
}

template <bool Parallel>
void BM_occupation_scan(benchmark::State& state) {
    const auto w = free_frequencies(HubbardParams{static_cast<int>(state.range(0)), 1.0, -0.5, 0.0}).values;
    for (auto _ : state) {
        auto r = Parallel ? kernels::occupation_scan_parallel(w, 0.8) : kernels::occupation_scan_serial(w, 0.8);
        benchmark::DoNotOptimize(r);
    }
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

template <bool Parallel>
void BM_forged_contraction(benchmark::State& state) {
    const int dim = 1 << state.range(0);
    const int tables = 64;
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    std::vector<Eigen::MatrixXcd> left, right;
    for (int i = 0; i < tables; ++i) {
        left.push_back(Eigen::MatrixXcd::Random(dim, dim));
        right.push_back(Eigen::MatrixXcd::Random(dim, dim));
    }
    std::vector<kernels::ForgedTermRef> terms;
    for (int a = 0; a < 1000; ++a) terms.push_back({g(rng), static_cast<int>(rng() % tables), static_cast<int>(rng() % tables)});
    const Eigen::VectorXd lambda = Eigen::VectorXd::Random(dim).cwiseAbs().normalized();
    for (auto _ : state) {
        const cplx r = Parallel ? kernels::forged_contraction_parallel(terms, left, right, lambda)
                                : kernels::forged_contraction_serial(terms, left, right, lambda);
        benchmark::DoNotOptimize(r);
    }
}

} // namespace

BENCHMARK(BM_spmv<false>)->Name("spmv/serial")->Arg(5)->Arg(7)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_spmv<true>)->Name("spmv/parallel")->Arg(5)->Arg(7)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_pauli_rows<false>)->Name("pauli_rows/serial")->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pauli_rows<true>)->Name("pauli_rows/parallel")->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_occupation_scan<false>)->Name("occupation_scan/serial")->Arg(12)->Arg(18)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_occupation_scan<true>)->Name("occupation_scan/parallel")->Arg(12)->Arg(18)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_forged_contraction<false>)->Name("forged_contraction/serial")->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_forged_contraction<true>)->Name("forged_contraction/parallel")->Arg(3)->Arg(5)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
