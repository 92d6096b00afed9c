#include "doctest.h"
#include "oracles.hpp"

#include "tfdforge/doubled.hpp"
#include "tfdforge/models.hpp"
#include "tfdforge/solver.hpp"

#include <algorithm>

using namespace tfd;

TEST_CASE("diagonal_input_sorted_with_permutation_vectors") {
    const Eigen::Vector4cd d(3, 1, 2, 0);
    const auto e = eig_full(oracle::Mat(d.asDiagonal()));
    CHECK(e.energies == std::vector<double>{0, 1, 2, 3});
    const std::vector<int> where{3, 1, 2, 0};
    for (int m = 0; m < 4; ++m) CHECK(std::abs(e.vectors(where[static_cast<std::size_t>(m)], m) - 1.0) < 1e-14);
    CHECK(e.spectral_range() == 3.0);
}

TEST_CASE("free_spectrum_is_subset_sums") {
    const HubbardParams p{4, 1.0, 0.3, 0.0};
    const auto w = free_frequencies(p);
    std::vector<double> sums;
    for (std::uint64_t b = 0; b < 16; ++b) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k)
            if ((b >> k) & 1u) s += w.values[static_cast<std::size_t>(k)];
        sums.push_back(s);
    }
    std::sort(sums.begin(), sums.end());
    const auto e = eig_full(build_sparse(jordan_wigner(hubbard_momentum(p)), 4));
    for (std::size_t i = 0; i < sums.size(); ++i) CHECK(e.energies[i] == doctest::Approx(sums[i]).epsilon(1e-12));
}

TEST_CASE("two_by_two_closed_form") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 20; ++trial) {
        const oracle::Mat h = oracle::random_hermitian(2, rng);
        const double a = h(0, 0).real(), d = h(1, 1).real();
        const double disc = std::sqrt((a - d) * (a - d) / 4.0 + std::norm(h(0, 1)));
        const auto e = eig_full(h);
        CHECK(e.energies[0] == doctest::Approx((a + d) / 2.0 - disc).epsilon(1e-12));
        CHECK(e.energies[1] == doctest::Approx((a + d) / 2.0 + disc).epsilon(1e-12));
    }
}

TEST_CASE("eigenpairs_residual_and_orthonormality") {
    std::mt19937_64 rng(5);
    const oracle::Mat h = oracle::random_hermitian(64, rng);
    const auto e = eig_full(h);
    const double range = e.spectral_range();
    for (Eigen::Index m = 0; m < 64; ++m)
        CHECK((h * e.vectors.col(m) - e.energies[static_cast<std::size_t>(m)] * e.vectors.col(m)).norm() <= 1e-9 * range);
    CHECK(oracle::max_abs(e.vectors.adjoint() * e.vectors - oracle::Mat::Identity(64, 64)) <= 1e-10);
}

TEST_CASE("degenerate_blocks_are_canonical") {
    const HubbardParams p{4, 1.0, 0.0, 0.0}; // omega_1 = omega_3 = 0: degenerate
    const auto h = build_sparse(hubbard_momentum(p)).to_dense();
    const auto a = eig_full(h);
    const auto b = eig_full(h);
    CHECK(a.vectors == b.vectors);
    for (Eigen::Index m = 0; m < a.vectors.cols(); ++m) {
        Eigen::Index arg = 0;
        a.vectors.col(m).cwiseAbs().maxCoeff(&arg);
        CHECK(std::abs(a.vectors(arg, m).imag()) < 1e-12);
        CHECK(a.vectors(arg, m).real() > 0.0);
    }
}

TEST_CASE("eig_full_errors") {
    oracle::Mat bad = oracle::Mat::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(eig_full(bad), ContractViolation);
    CHECK_THROWS_AS(eig_full(SparseOperator::identity(8192)), ResourceError);
}

TEST_CASE("lanczos_matches_dense_lowest") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const auto h = SparseOperator::from_dense(oracle::random_hermitian(300, rng));
        const auto gs = ground_state(h);
        CHECK(gs.energy == doctest::Approx(eig_full(h).energies.front()).epsilon(1e-9));
        CHECK(gs.residual <= 1e-10);
        CHECK(gs.vector.norm() == doctest::Approx(1.0));
    }
    const HubbardParams p{6, 1.0, 0.0, 1.0};
    const auto h = build_sparse(hubbard_momentum(p));
    CHECK(ground_state(h).energy == doctest::Approx(eig_full(h).energies.front()).epsilon(1e-9));
}

TEST_CASE("lanczos_identity") {
    const auto gs = ground_state(SparseOperator::identity(32));
    CHECK(gs.energy == doctest::Approx(1.0));
    CHECK(gs.vector.norm() == doctest::Approx(1.0));
}

TEST_CASE("lanczos_is_deterministic") {
    const HubbardParams p{5, 1.0, 0.2, 0.7};
    const auto h = build_h_total(hubbard_momentum(p), free_frequencies(p), 0.8).op;
    const auto a = ground_state(h);
    const auto b = ground_state(h);
    CHECK(a.energy == b.energy);
    CHECK(a.vector == b.vector);
}

TEST_CASE("lanczos_reports_best_residual_on_failure") {
    std::mt19937_64 rng(8);
    const auto h = SparseOperator::from_dense(oracle::random_hermitian(200, rng));
    LanczosOptions tight;
    tight.krylov_dim = 3;
    tight.max_restarts = 1;
    try {
        ground_state(h, tight);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.best_residual() > tight.tol);
    }
}

TEST_CASE("free_doubled_ground_energy_is_zero_point_sum") {
    for (double beta : {0.1, 1.0, 4.0}) {
        const HubbardParams p{4, 1.0, 0.5, 0.0};
        const auto w = free_frequencies(p);
        const auto h = build_h_total(hubbard_momentum(p), w, beta);
        const auto f = bogoliubov_factors(w, beta);
        double expect = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            const double u2 = f.u[i] * f.u[i], v2 = f.v[i] * f.v[i];
            expect -= 2.0 * w.values[i] * v2 / (u2 - v2);
        }
        CHECK(ground_state(h.op).energy == doctest::Approx(expect).epsilon(1e-9));
    }
}
