#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "demon/states.hpp"
#include "demon/tensor.hpp"
#include "support/oracles.hpp"

using demon::ComplexMatrix;
using demon::cplx;
using demon::SubsystemLayout;

TEST_CASE("kron of small matrices") {
    const ComplexMatrix x(2, 2, {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}});
    const ComplexMatrix z(2, 2, {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}});
    const ComplexMatrix xz = demon::kron(x, z);
    CHECK(xz.rows() == 4);
    CHECK(std::abs(xz(0, 2) - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(xz(1, 3) - cplx{-1, 0}) < 1e-15);
    CHECK(std::abs(xz(2, 0) - cplx{1, 0}) < 1e-15);
    CHECK(std::abs(xz(0, 0)) < 1e-15);
}

TEST_CASE("kron against elementwise definition on random rectangles") {
    const ComplexMatrix a = oracle::random_matrix(2, 3, 11);
    const ComplexMatrix b = oracle::random_matrix(3, 2, 12);
    const ComplexMatrix k = demon::kron(a, b);
    REQUIRE(k.rows() == 6);
    REQUIRE(k.cols() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        for (std::size_t j = 0; j < 6; ++j) {
            const cplx expected = a(i / 3, j / 2) * b(i % 3, j % 2);
            CHECK(std::abs(k(i, j) - expected) < 1e-14);
        }
    }
}

TEST_CASE("partial trace matches the brute-force oracle on three factors") {
    const SubsystemLayout layout({{"S", 2}, {"R", 3}, {"B", 2}});
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const ComplexMatrix rho = oracle::random_state(12, seed);
        const std::vector<std::size_t> dims{2, 3, 2};

        const struct {
            std::vector<std::string> keep;
            std::vector<bool> mask;
        } cases[] = {
            {{"S"}, {true, false, false}},
            {{"R"}, {false, true, false}},
            {{"B"}, {false, false, true}},
            {{"S", "R"}, {true, true, false}},
            {{"S", "B"}, {true, false, true}},
            {{"R", "B"}, {false, true, true}},
        };
        for (const auto& c : cases) {
            const ComplexMatrix got = demon::partial_trace(rho, layout, c.keep);
            const ComplexMatrix want = oracle::partial_trace(rho, dims, c.mask);
            CHECK(demon::max_abs_diff(got, want) < 1e-12);
        }
    }
}

TEST_CASE("partial trace of a product splits into factor traces") {
    const ComplexMatrix a = oracle::random_state(2, 5);
    const ComplexMatrix b = oracle::random_state(3, 6);
    const SubsystemLayout layout({{"A", 2}, {"B", 3}});
    const ComplexMatrix joint = demon::kron(a, b);
    CHECK(demon::max_abs_diff(demon::partial_trace(joint, layout, {"A"}), a) < 1e-13);
    CHECK(demon::max_abs_diff(demon::partial_trace(joint, layout, {"B"}), b) < 1e-13);
}

TEST_CASE("embed places an operator on the named factors") {
    const SubsystemLayout layout({{"S", 2}, {"A", 3}});
    const ComplexMatrix op = oracle::random_matrix(3, 3, 21);
    const ComplexMatrix lifted = demon::embed(op, layout, {"A"});
    CHECK(demon::max_abs_diff(lifted, demon::kron(ComplexMatrix::identity(2), op)) < 1e-14);

    const ComplexMatrix front = demon::embed(oracle::random_matrix(2, 2, 22), layout, {"S"});
    CHECK(front.rows() == 6);
}

TEST_CASE("embed on two adjacent factors of three") {
    const SubsystemLayout layout({{"S", 2}, {"R", 2}, {"B", 2}});
    const ComplexMatrix op = oracle::random_matrix(4, 4, 23);
    const ComplexMatrix lifted = demon::embed(op, layout, {"S", "R"});
    CHECK(demon::max_abs_diff(lifted, demon::kron(op, ComplexMatrix::identity(2))) < 1e-14);
}

TEST_CASE("embed rejects out-of-order factor lists") {
    const SubsystemLayout layout({{"S", 2}, {"A", 2}});
    const ComplexMatrix op = oracle::random_matrix(4, 4, 24);
    CHECK_THROWS(demon::embed(op, layout, {"A", "S"}));
}

TEST_CASE("contract_factor equals the explicit sandwich") {
    const SubsystemLayout layout({{"S", 2}, {"A", 3}, {"B", 2}});
    const ComplexMatrix rho = oracle::random_state(12, 31);
    const ComplexMatrix ket = oracle::random_matrix(3, 1, 32);

    // (I x <ket| x I) rho (I x |ket> x I) built from rectangular pieces.
    ComplexMatrix bra_lift(4, 12);
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t b = 0; b < 2; ++b) {
            for (std::size_t a = 0; a < 3; ++a) {
                bra_lift(s * 2 + b, s * 6 + a * 2 + b) = std::conj(ket(a, 0));
            }
        }
    }
    const ComplexMatrix expected =
        oracle::naive_product(oracle::naive_product(bra_lift, rho), bra_lift.adjoint());
    const ComplexMatrix got = demon::contract_factor(rho, layout, "A", ket);
    CHECK(demon::max_abs_diff(got, expected) < 1e-12);
}

TEST_CASE("herm_eig reconstructs and orders the spectrum") {
    for (std::uint64_t seed = 40; seed < 50; ++seed) {
        const ComplexMatrix h = oracle::random_hermitian(5, seed);
        const demon::EigResult eig = demon::herm_eig(h);
        REQUIRE(eig.values.size() == 5);
        for (std::size_t i = 1; i < 5; ++i) CHECK(eig.values[i - 1] <= eig.values[i]);

        ComplexMatrix scaled = eig.vectors;
        for (std::size_t c = 0; c < 5; ++c) {
            for (std::size_t r = 0; r < 5; ++r) scaled(r, c) *= eig.values[c];
        }
        CHECK(demon::max_abs_diff(oracle::naive_product(scaled, eig.vectors.adjoint()), h) <
              1e-12);
        CHECK(demon::is_unitary(eig.vectors));
    }
}

TEST_CASE("herm_eig rejects a non-hermitian input") {
    CHECK_THROWS(demon::herm_eig(oracle::random_matrix(3, 3, 51)));
}

TEST_CASE("herm_func exponential matches scaling-and-squaring") {
    for (std::uint64_t seed = 60; seed < 70; ++seed) {
        const ComplexMatrix h = oracle::random_hermitian(4, seed);
        const ComplexMatrix via_eig =
            demon::herm_func(h, [](double x) { return std::exp(cplx{0.0, x}); });
        ComplexMatrix ih = h;
        ih *= cplx{0.0, 1.0};
        CHECK(demon::max_abs_diff(via_eig, oracle::expm(ih)) < 1e-9);
        CHECK(demon::is_unitary(via_eig));
    }
}

TEST_CASE("predicates recognize structure") {
    CHECK(demon::is_hermitian(oracle::random_hermitian(4, 71)));
    CHECK_FALSE(demon::is_hermitian(oracle::random_matrix(4, 4, 72)));
    CHECK(demon::is_unitary(ComplexMatrix::identity(3)));
    CHECK_FALSE(demon::is_unitary(oracle::random_matrix(3, 3, 73)));
    CHECK(demon::is_psd(oracle::random_state(4, 74)));
    ComplexMatrix negative = ComplexMatrix::identity(2);
    negative *= cplx{-1.0, 0.0};
    CHECK_FALSE(demon::is_psd(negative));
}

TEST_CASE("layout keep and drop preserve declaration order") {
    const SubsystemLayout layout({{"S", 2}, {"R1", 3}, {"A", 2}, {"B", 2}});
    const SubsystemLayout kept = layout.keep({"A", "S"});
    REQUIRE(kept.factor_count() == 2);
    CHECK(kept.factors()[0].name == "S");
    CHECK(kept.factors()[1].name == "A");
    const SubsystemLayout dropped = layout.drop({"R1"});
    REQUIRE(dropped.factor_count() == 3);
    CHECK(dropped.factors()[0].name == "S");
    CHECK(dropped.total_dim() == 8);
}
