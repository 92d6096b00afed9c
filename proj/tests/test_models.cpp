#include "doctest.h"
#include "oracles.hpp"

#include "tfdforge/kernels.hpp"
#include "tfdforge/models.hpp"

#include <numbers>

using namespace tfd;

namespace {

void check_frequencies(const HubbardParams& p, const std::vector<double>& expect) {
    const auto w = free_frequencies(p);
    REQUIRE(w.size() == expect.size());
    for (std::size_t k = 0; k < expect.size(); ++k) CHECK(w.values[k] == doctest::Approx(expect[k]).epsilon(1e-14));
}

double exhaustive_minimum(const HubbardParams& p, std::uint64_t* arg = nullptr) {
    double best = 1e300;
    for (std::uint64_t b = 0; b < (std::uint64_t{1} << p.n_sites); ++b) {
        const double e = mean_field_energy(FockState(b, p.n_sites), p);
        if (e < best) {
            best = e;
            if (arg) *arg = b;
        }
    }
    return best;
}

} // namespace

TEST_CASE("params_validate") {
    CHECK_THROWS_AS(hubbard_real(HubbardParams{1, 1.0, 0.0, 0.0}), ContractViolation);
    CHECK(parse_frequency_source("meanfield") == FrequencySource::MeanField);
    CHECK(to_string(FrequencySource::Free) == "free");
    CHECK_THROWS_AS(parse_frequency_source("thermal"), ContractViolation);
}

TEST_CASE("chemical_potential_only") {
    const auto m = build_sparse(hubbard_real(HubbardParams{2, 0.0, 1.0, 0.0})).to_dense();
    const Eigen::Vector4cd diag(0, 1, 1, 2);
    CHECK(oracle::max_abs(m - oracle::Mat(diag.asDiagonal())) < 1e-15);
}

TEST_CASE("hubbard_forms_are_hermitian") {
    for (double U : {0.0, 0.5, 1.0})
        for (int n : {2, 3, 4, 5}) {
            const HubbardParams p{n, 1.0, -0.3, U};
            for (const auto& op : {hubbard_real(p), hubbard_momentum(p)}) {
                const auto m = build_sparse(op).to_dense();
                CHECK(oracle::max_abs(m - m.adjoint()) <= 1e-12);
            }
        }
}

TEST_CASE("momentum_form_is_diagonal_without_interaction") {
    const HubbardParams p{4, 1.0, 0.2, 0.0};
    const auto m = build_sparse(hubbard_momentum(p)).to_dense();
    const auto w = free_frequencies(p);
    for (Eigen::Index r = 0; r < 16; ++r)
        for (Eigen::Index c = 0; c < 16; ++c) {
            double expect = 0.0;
            if (r == c)
                for (int k = 0; k < 4; ++k)
                    if ((r >> k) & 1) expect += w.values[static_cast<std::size_t>(k)];
            CHECK(std::abs(m(r, c) - expect) < 1e-14);
        }
}

TEST_CASE("real_and_momentum_spectra_agree") {
    for (int n = 2; n <= 6; ++n)
        for (double U : {0.0, 0.5, 1.0})
            for (double eps0 : {-1.0, 0.0, 1.0}) {
                const HubbardParams p{n, 1.0, eps0, U};
                const auto a = oracle::sorted_eigenvalues(build_sparse(hubbard_real(p)).to_dense());
                const auto b = oracle::sorted_eigenvalues(build_sparse(hubbard_momentum(p)).to_dense());
                CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10);
            }
}

TEST_CASE("free_frequency_tables") {
    check_frequencies(HubbardParams{4, 1.0, 0.0, 0.0}, {-2, 0, 2, 0});
    check_frequencies(HubbardParams{6, 1.0, 0.0, 0.0}, {-2, -1, 1, 2, 1, -1});
    check_frequencies(HubbardParams{5, 0.0, 0.7, 0.0}, {0.7, 0.7, 0.7, 0.7, 0.7});
}

TEST_CASE("mean_field_energy_basic_values") {
    const HubbardParams p{4, 1.0, 0.3, 0.8};
    CHECK(mean_field_energy(FockState(0, 4), p) == 0.0);
    const HubbardParams free{5, 1.0, 0.3, 0.0};
    const auto w = free_frequencies(free);
    for (std::uint64_t b = 0; b < 32; ++b) {
        double sum = 0.0;
        for (int k = 0; k < 5; ++k)
            if ((b >> k) & 1u) sum += w.values[static_cast<std::size_t>(k)];
        CHECK(mean_field_energy(FockState(b, 5), free) == doctest::Approx(sum).epsilon(1e-14));
    }
}

TEST_CASE("mean_field_energy_against_dense_expectation") {
    // <b|H|b> of the momentum form is U N (rho^2 - alpha^2 - s^2) + sum w b with
    // s the sine moment; the mean-field energy keeps the symmetric part.
    const HubbardParams p{4, 1.0, 0.0, 1.0};
    const auto m = build_sparse(hubbard_momentum(p)).to_dense();
    for (std::uint64_t b = 0; b < 16; ++b) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k)
            if ((b >> k) & 1u) s += std::sin(2.0 * std::numbers::pi * k / 4) / 4;
        const double dense = m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real();
        CHECK(mean_field_energy(FockState(b, 4), p) - p.U * 4 * s * s == doctest::Approx(dense).epsilon(1e-12));
    }
    // half filling, symmetric patterns: exact equality
    for (std::uint64_t b : {0b0101u, 0b1010u})
        CHECK(mean_field_energy(FockState(b, 4), p) ==
              doctest::Approx(m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real()).epsilon(1e-12));
}

TEST_CASE("mean_field_without_interaction_is_free") {
    const HubbardParams p{6, 1.0, 0.0, 0.0};
    const auto r = mean_field_frequencies(p);
    const auto w = free_frequencies(p);
    for (std::size_t k = 0; k < w.size(); ++k) CHECK(r.frequencies.values[k] == w.values[k]);
    CHECK(r.frequencies.source == FrequencySource::MeanField);
    // omega_1 = omega_5 = -1: several optimal patterns, lowest bitmask wins
    std::uint64_t arg = 0;
    CHECK(r.energy == exhaustive_minimum(p, &arg));
    CHECK(r.occupation.bits() == arg);
}

TEST_CASE("mean_field_stored_frequencies_are_consistent") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        const HubbardParams p{3 + static_cast<int>(rng() % 5), 1.0, u(rng), std::abs(u(rng))};
        const auto r = mean_field_frequencies(p);
        const auto shifted = shifted_frequencies(p, r.density, r.cos_moment);
        for (std::size_t k = 0; k < shifted.size(); ++k) CHECK(std::abs(r.frequencies.values[k] - shifted[k]) <= 1e-12);
        CHECK(r.density == doctest::Approx(static_cast<double>(r.occupation.particle_count()) / p.n_sites));
        CHECK(r.n_particles == r.occupation.particle_count());
    }
}

TEST_CASE("mean_field_matches_exhaustive_minimum") {
    const HubbardParams p{4, 1.0, -1.0, 0.5};
    const auto r = mean_field_frequencies(p);
    std::uint64_t arg = 0;
    CHECK(std::abs(r.energy - exhaustive_minimum(p, &arg)) <= 1e-12);
    CHECK(r.occupation.bits() == arg);
}

TEST_CASE("filling_search_alone_finds_the_minimum") {
    // the fixed-point path without the exhaustive scan
    MeanFieldOptions no_scan;
    no_scan.brute_force_max_sites = 0;
    for (double eps0 : {-1.0, 0.0, 1.0})
        for (double U : {0.2, 0.5, 1.0}) {
            const HubbardParams p{6, 1.0, eps0, U};
            const auto fast = mean_field_frequencies(p, no_scan);
            CHECK_FALSE(fast.brute_force);
            CHECK(fast.converged);
            CHECK(fast.energy == doctest::Approx(exhaustive_minimum(p)).epsilon(1e-12));
        }
}
