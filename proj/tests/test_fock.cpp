#include "doctest.h"
#include "oracles.hpp"

#include "tfdforge/models.hpp"

using namespace tfd;

namespace {

FermionOperator random_hermitian_op(int n, std::mt19937_64& rng, int n_terms) {
    std::uniform_int_distribution<int> mode(0, n - 1), len(0, 4);
    std::normal_distribution<double> g;
    FermionOperator op(n);
    for (int t = 0; t < n_terms; ++t) {
        std::vector<Ladder> f;
        const int l = len(rng);
        for (int i = 0; i < l; ++i) f.push_back({mode(rng), static_cast<bool>(rng() & 1u)});
        op.add(cplx{g(rng), g(rng)}, f);
    }
    return op + op.adjoint();
}

} // namespace

TEST_CASE("fock_state_rejects_bits_above_mode_count") {
    CHECK_THROWS_AS(FockState(4, 2), ContractViolation);
    CHECK_THROWS_AS(FockState(0, 0), ContractViolation);
    CHECK(FockState(3, 2).particle_count() == 2);
    CHECK(computational_basis(3).size() == 8u);
}

TEST_CASE("creation_on_vacuum") {
    const auto r = apply_fermion_term({1.0, {create(0)}}, FockState(0, 3));
    REQUIRE(r);
    CHECK(r->phase == 1.0);
    CHECK(r->state == FockState(1, 3));
}

TEST_CASE("annihilation_of_empty_mode_is_absent") {
    CHECK_FALSE(apply_fermion_term({1.0, {annihilate(0)}}, FockState(0, 3)));
    CHECK_FALSE(apply_fermion_term({1.0, {create(1)}}, FockState(2, 3)));
}

TEST_CASE("creation_order_gives_opposite_phases") {
    const FockState vac(0, 2);
    const auto a = apply_fermion_term({1.0, {create(1), create(0)}}, vac);
    const auto b = apply_fermion_term({1.0, {create(0), create(1)}}, vac);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->state == b->state);
    CHECK(a->phase == -b->phase);

    // dense Jordan-Wigner oracle
    const oracle::Mat m1 = oracle::ladder(2, 1, true) * oracle::ladder(2, 0, true);
    const oracle::Mat m2 = oracle::ladder(2, 0, true) * oracle::ladder(2, 1, true);
    CHECK(m1(3, 0).real() == doctest::Approx(a->phase));
    CHECK(m2(3, 0).real() == doctest::Approx(b->phase));
}

TEST_CASE("out_of_range_mode_is_contract_violation") {
    const FermionTerm t{1.0, {create(5)}};
    CHECK_THROWS_AS(apply_fermion_term(t, FockState(0, 3)), ContractViolation);
    FermionOperator op(3);
    CHECK_THROWS_AS(op.add(1.0, {create(3)}), ContractViolation);
}

TEST_CASE("identity_term_leaves_state") {
    const auto r = apply_fermion_term({2.0, {}}, FockState(5, 3));
    REQUIRE(r);
    CHECK(r->phase == 1.0);
    CHECK(r->state.bits() == 5u);
}

TEST_CASE("number_operator_matrix") {
    FermionOperator op(1);
    op.add(1.0, {create(0), annihilate(0)});
    const auto m = build_sparse(op).to_dense();
    CHECK(oracle::max_abs(m - oracle::Mat(Eigen::Vector2cd(0, 1).asDiagonal())) == 0.0);
}

TEST_CASE("build_sparse_matches_dense_jordan_wigner_oracle") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 5; ++n) {
        const auto op = random_hermitian_op(n, rng, 12);
        const auto m = build_sparse(op).to_dense();
        CHECK(oracle::max_abs(m - oracle::fermion_dense(op)) < 1e-12);
    }
}

TEST_CASE("hermitian_operators_build_hermitian_matrices") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 6; ++n) {
        const auto m = build_sparse(random_hermitian_op(n, rng, 20)).to_dense();
        CHECK(oracle::max_abs(m - m.adjoint()) <= 1e-12);
    }
}

TEST_CASE("hubbard_matrix_equals_sum_of_term_matrices") {
    HubbardParams p{4, 1.0, 0.3, 0.7};
    const auto h = hubbard_momentum(p);
    oracle::Mat sum = oracle::Mat::Zero(16, 16);
    for (const auto& t : h.terms()) {
        FermionOperator single(4);
        single.add(t);
        sum += build_sparse(single).to_dense();
    }
    CHECK(oracle::max_abs(build_sparse(h).to_dense() - sum) < 1e-12);
    CHECK(oracle::max_abs(sum - oracle::fermion_dense(h)) < 1e-12);
}

TEST_CASE("qubit_cap_is_enforced") {
    FermionOperator op(17);
    op.add(1.0, {create(0), annihilate(0)});
    CHECK_THROWS_AS(build_sparse(op), ResourceError);
    CHECK_THROWS_AS(build_sparse(oracle::number_sum({1.0, 1.0, 1.0}), BuildOptions{2}), ResourceError);
}

TEST_CASE("jordan_wigner_number_operator") {
    FermionOperator op(1);
    op.add(1.0, {create(0), annihilate(0)});
    const auto ps = merge_like(jordan_wigner(op));
    REQUIRE(ps.size() == 2u);
    CHECK(ps[0].letters() == "I");
    CHECK(ps[0].coefficient() == cplx(0.5));
    CHECK(ps[1].letters() == "Z");
    CHECK(ps[1].coefficient() == cplx(-0.5));
}

TEST_CASE("jordan_wigner_adjacent_hopping") {
    FermionOperator op(2);
    op.add(1.0, {create(0), annihilate(1)});
    op.add(1.0, {create(1), annihilate(0)});
    const auto ps = merge_like(jordan_wigner(op));
    REQUIRE(ps.size() == 2u);
    for (const auto& p : ps) {
        CHECK((p.letters() == "XX" || p.letters() == "YY"));
        CHECK(p.coefficient() == cplx(0.5));
    }
}

TEST_CASE("skip_z_drops_exactly_the_inner_z") {
    FermionOperator op(3);
    op.add(1.0, {create(0), annihilate(2)});
    op.add(1.0, {create(2), annihilate(0)});
    const auto full = merge_like(jordan_wigner(op, false));
    const auto skip = merge_like(jordan_wigner(op, true));
    REQUIRE(full.size() == skip.size());
    for (std::size_t i = 0; i < full.size(); ++i) {
        CHECK(full[i].letter(1) == 'Z');
        CHECK(skip[i].letter(1) == 'I');
        CHECK(full[i].letter(0) == skip[i].letter(0));
        CHECK(full[i].letter(2) == skip[i].letter(2));
    }
    const oracle::Mat z1 = oracle::string_dense("IZI");
    CHECK(oracle::max_abs(oracle::pauli_sum_dense(full, 3) - z1 * oracle::pauli_sum_dense(skip, 3)) < 1e-14);
}

TEST_CASE("jordan_wigner_matches_fermion_matrix") {
    std::mt19937_64 rng(3);
    for (int n = 1; n <= 5; ++n) {
        const auto op = random_hermitian_op(n, rng, 10);
        const auto ps = jordan_wigner(op);
        CHECK(oracle::max_abs(oracle::pauli_sum_dense(ps, n) - oracle::fermion_dense(op)) < 1e-12);
        CHECK(oracle::max_abs(build_sparse(ps, n).to_dense() - build_sparse(op).to_dense()) < 1e-12);
    }
}

TEST_CASE("embed_left_keeps_modes") {
    FermionOperator op(2);
    op.add(1.0, {create(0), annihilate(0)});
    const auto e = embed_doubled(op, Side::Left);
    CHECK(e.n_modes() == 4);
    REQUIRE(e.terms().size() == 1u);
    CHECK(e.terms()[0].factors[0].mode == 0);
    CHECK(e.terms()[0].factors[1].mode == 0);
}

TEST_CASE("embed_right_conjugates_and_shifts") {
    FermionOperator op(2);
    op.add(cplx(1.0, 2.0), {create(1), annihilate(0)});
    const auto e = embed_doubled(op, Side::Right);
    REQUIRE(e.terms().size() == 1u);
    CHECK(e.terms()[0].coefficient == cplx(1.0, -2.0));
    CHECK(e.terms()[0].factors[0].mode == 3);
    CHECK(e.terms()[0].factors[1].mode == 2);
}

TEST_CASE("embed_cross_rejects_non_pair_terms") {
    FermionOperator bad(4);
    bad.add(1.0, {annihilate(0), annihilate(3)});
    CHECK_THROWS_AS(embed_doubled(bad, Side::Cross), ContractViolation);
    FermionOperator one_sided(4);
    one_sided.add(1.0, {create(0), annihilate(0)});
    CHECK_THROWS_AS(embed_doubled(one_sided, Side::Cross), ContractViolation);
    FermionOperator good(4);
    good.add(1.0, {annihilate(1), annihilate(3)});
    CHECK(embed_doubled(good, Side::Cross).terms().size() == 1u);
}

TEST_CASE("doubled_free_spectrum_is_pairwise_sums") {
    HubbardParams p{2, 1.0, 0.4, 0.0};
    const auto h = hubbard_real(p);
    const auto one = oracle::sorted_eigenvalues(build_sparse(h).to_dense());
    const auto both = oracle::sorted_eigenvalues(
        build_sparse(embed_doubled(h, Side::Left) + embed_doubled(h, Side::Right)).to_dense());
    std::vector<double> sums;
    for (Eigen::Index i = 0; i < one.size(); ++i)
        for (Eigen::Index j = 0; j < one.size(); ++j) sums.push_back(one[i] + one[j]);
    std::sort(sums.begin(), sums.end());
    REQUIRE(sums.size() == static_cast<std::size_t>(both.size()));
    for (std::size_t i = 0; i < sums.size(); ++i) CHECK(both[static_cast<Eigen::Index>(i)] == doctest::Approx(sums[i]).epsilon(1e-12));
}
