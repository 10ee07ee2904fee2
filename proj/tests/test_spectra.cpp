#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qgraph/spectra.hpp"

using namespace qgraph;

namespace {

Eigen::MatrixXi cycle_adj(int n) {
    Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        adj(i, (i + 1) % n) = 1;
        adj((i + 1) % n, i) = 1;
    }
    return adj;
}

Eigen::MatrixXi complete_adj(int n) {
    Eigen::MatrixXi adj = Eigen::MatrixXi::Ones(n, n);
    adj.diagonal().setZero();
    return adj;
}

Matrix random_hermitian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix X(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) X(i, j) = Complex(gauss(rng), gauss(rng));
    return (X + X.adjoint()) / 2.0;
}

}  // namespace

TEST_CASE("eig_hermitian_orders_descending") {
    Spectrum s = eig_hermitian(from_classical(complete_adj(4)).adjacency());
    CHECK(s.values(0) == Catch::Approx(3.0));
    for (int i = 1; i < 4; ++i) CHECK(s.values(i) == Catch::Approx(-1.0));

    Spectrum z = eig_hermitian(Matrix::Zero(3, 3));
    CHECK(z.values.cwiseAbs().maxCoeff() == 0.0);

    Matrix skew(2, 2);
    skew << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS_AS(eig_hermitian(skew), NotHermitian);
}

TEST_CASE("degree_matrix_matches_classical_degrees") {
    QuantumGraph c5 = from_classical(cycle_adj(5));
    Matrix D = degree_matrix(c5);
    CHECK((D - 2.0 * Matrix::Identity(5, 5)).norm() < 1e-12);
    CHECK(std::abs(D.trace().real() - 10.0) < 1e-12);  // 2|E|

    auto qubit = build_context({2});
    Matrix Dk = degree_matrix(complete_graph(qubit));
    CHECK((Dk - 3.0 * Matrix::Identity(4, 4)).norm() < 1e-10);
    CHECK(std::abs(Dk.trace().real() - 12.0) < 1e-10);

    CHECK(degree_matrix(empty_graph(build_context({1, 2}))).norm() < 1e-15);
}

TEST_CASE("degree_matrix_lives_in_the_commutant") {
    for (const auto& blocks : {std::vector<int>{2}, std::vector<int>{1, 1, 2}}) {
        auto ctx = build_context(blocks);
        QuantumGraph K = complete_graph(ctx);
        Matrix D = degree_matrix(K);
        for (int a = 0; a < ctx->dim(); ++a) {
            Matrix L = ctx->left_mult_op(ctx->basis_element(a));
            CHECK((D * L - L * D).norm() < 1e-9);
        }
        // Tr(D) = dim(S)
        Superoperator P = projection_from_adjacency(ctx, K.adjacency());
        CHECK(std::abs(D.trace().real() - range_of(P).dim()) < 1e-9);
    }
}

TEST_CASE("laplacian_spectra_of_complete_graphs") {
    auto qubit = build_context({2});
    auto [L, Q] = laplacians(complete_graph(qubit));
    Spectrum ql = eig_hermitian(Q);
    CHECK(ql.values(0) == Catch::Approx(6.0));
    for (int i = 1; i < 4; ++i) CHECK(ql.values(i) == Catch::Approx(2.0));
    Spectrum ll = eig_hermitian(L);
    for (int i = 0; i < 3; ++i) CHECK(ll.values(i) == Catch::Approx(4.0));
    CHECK(ll.values(3) == Catch::Approx(0.0).margin(1e-12));

    // L annihilates the unit vector.
    CHECK((L * qubit->unit_vector()).norm() < 1e-10);

    auto [Le, Qe] = laplacians(empty_graph(build_context({2})));
    CHECK(Le.norm() < 1e-15);
    CHECK(Qe.norm() < 1e-15);

    CHECK_THROWS_AS(laplacians(complete_graph(build_context({2}), /*reflexive=*/true)),
                    GraphNotIrreflexive);
}

TEST_CASE("bounds_on_the_complete_quantum_graph_are_tight") {
    auto qubit = build_context({2});
    BoundsReport rep = all_bounds(complete_graph(qubit));
    CHECK(rep.dim_M == 4);
    CHECK(rep.lambda_max == Catch::Approx(3.0));
    CHECK(rep.lambda_min == Catch::Approx(-1.0));
    CHECK(rep.s_plus == Catch::Approx(9.0));
    CHECK(rep.s_minus == Catch::Approx(3.0));
    CHECK(rep.inertia_counts.positive == 1);
    CHECK(rep.inertia_counts.negative == 3);
    CHECK(rep.gamma_max == Catch::Approx(6.0));
    CHECK(rep.gamma_min == Catch::Approx(2.0));
    CHECK(rep.theta_max == Catch::Approx(4.0));
    CHECK(rep.edge_number_2m == Catch::Approx(12.0));

    for (const SpectralBound* b :
         {&rep.hoffman, &rep.edge, &rep.sum_squares, &rep.inertia, &rep.laplacian}) {
        CHECK(b->applicable);
        CHECK(b->value == Catch::Approx(4.0).margin(1e-6));
    }
    CHECK(rep.best == Catch::Approx(4.0).margin(1e-6));
}

TEST_CASE("bounds_tightness_across_contexts") {
    for (const auto& blocks : {std::vector<int>{2}, std::vector<int>{1, 1, 2},
                               std::vector<int>{3}, std::vector<int>{2, 2}}) {
        auto ctx = build_context(blocks);
        BoundsReport rep = all_bounds(complete_graph(ctx));
        double d = ctx->dim();
        CHECK(rep.hoffman.value == Catch::Approx(d).margin(1e-6));
        CHECK(rep.edge.value == Catch::Approx(d).margin(1e-6));
        CHECK(rep.sum_squares.value == Catch::Approx(d).margin(1e-6));
        CHECK(rep.inertia.value == Catch::Approx(d).margin(1e-6));
        CHECK(rep.laplacian.value == Catch::Approx(d).margin(1e-6));
        CHECK(rep.best == Catch::Approx(d).margin(1e-6));
    }
}

TEST_CASE("bounds_of_the_empty_graph_degrade_to_one") {
    BoundsReport rep = all_bounds(empty_graph(build_context({1, 2})));
    for (const SpectralBound* b :
         {&rep.hoffman, &rep.edge, &rep.sum_squares, &rep.inertia, &rep.laplacian}) {
        CHECK_FALSE(b->applicable);
        CHECK(b->value == 1.0);
    }
    CHECK(rep.best == 1.0);
}

TEST_CASE("bounds_on_the_five_cycle_match_the_oracle") {
    // Frozen from an independent eigensolver + exhaustive chromatic oracle:
    // eigenvalues {2, 0.618.., 0.618.., -1.618.., -1.618..}, n+ = 3, n- = 2,
    // s+ = 4.7639320225, s- = 5.2360679775, gamma in [0.3819660113, 4],
    // theta_max = 3.6180339887, chi(C5) = 3.
    BoundsReport rep = all_bounds(from_classical(cycle_adj(5)));
    CHECK(rep.hoffman.value == Catch::Approx(2.2360679774997896).epsilon(1e-12));
    CHECK(rep.edge.value == Catch::Approx(2.2360679774997896).epsilon(1e-12));
    CHECK(rep.sum_squares.value == Catch::Approx(2.0991063585226796).epsilon(1e-12));
    CHECK(rep.inertia_counts.positive == 3);
    CHECK(rep.inertia_counts.negative == 2);
    CHECK(rep.inertia.value == Catch::Approx(2.5).epsilon(1e-12));
    CHECK(rep.laplacian.value == Catch::Approx(2.2360679774997896).epsilon(1e-12));
    CHECK(rep.best == Catch::Approx(2.5).epsilon(1e-12));
    CHECK(std::ceil(rep.best) <= 3.0);
}

TEST_CASE("hoffman_bound_is_exact_on_bipartite_and_complete_graphs") {
    for (auto [m, n] : {std::pair{1, 1}, {2, 3}, {3, 3}}) {
        Eigen::MatrixXi adj = Eigen::MatrixXi::Zero(m + n, m + n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) adj(i, m + j) = adj(m + j, i) = 1;
        BoundsReport rep = all_bounds(from_classical(adj));
        CHECK(rep.hoffman.value == Catch::Approx(2.0).margin(1e-9));
    }
    for (int n : {3, 4, 5, 6}) {
        BoundsReport rep = all_bounds(from_classical(complete_adj(n)));
        CHECK(rep.hoffman.value == Catch::Approx(double(n)).margin(1e-9));
    }
    for (int n : {4, 6, 8}) {
        BoundsReport rep = all_bounds(from_classical(cycle_adj(n)));
        CHECK(rep.hoffman.value == Catch::Approx(2.0).margin(1e-9));
    }
}

TEST_CASE("bounds_require_irreflexive_graphs") {
    CHECK_THROWS_AS(all_bounds(complete_graph(build_context({2}), /*reflexive=*/true)),
                    GraphNotIrreflexive);
}

TEST_CASE("zero_sum_and_frobenius_split") {
    for (const auto& blocks : {std::vector<int>{2}, std::vector<int>{1, 1, 2}}) {
        QuantumGraph K = complete_graph(build_context(blocks));
        Spectrum s = eig_hermitian(K.adjacency());
        CHECK(std::abs(s.values.sum()) < 1e-9);
        BoundsReport rep = all_bounds(K);
        CHECK(rep.s_plus + rep.s_minus ==
              Catch::Approx(K.adjacency().squaredNorm()).margin(1e-9));
        Inertia in = rep.inertia_counts;
        CHECK(in.positive + in.zero + in.negative == K.ctx().dim());
    }
}

TEST_CASE("block_inequalities_hold_on_random_hermitians") {
    std::mt19937_64 rng(2024);
    std::vector<int> partition = {2, 2};
    for (int trial = 0; trial < 1000; ++trial) {
        Matrix H = random_hermitian(4, rng);
        BlockInequalityReport rep = check_block_inequalities(H, partition);
        CHECK(rep.compression_slack >= -1e-9);
        CHECK(rep.split_slack_pos >= -1e-9);
        CHECK(rep.split_slack_neg >= -1e-9);
    }
}

TEST_CASE("block_inequalities_edge_cases") {
    std::mt19937_64 rng(9);
    Matrix H = random_hermitian(3, rng);
    // Single block: equality in the compression inequality.
    BlockInequalityReport rep = check_block_inequalities(H, {3});
    CHECK(rep.compression_slack == Catch::Approx(0.0).margin(1e-10));

    CHECK_THROWS_AS(check_block_inequalities(H, {2, 2}), ShapeMismatch);
    CHECK_THROWS_AS(check_block_inequalities(H, {}), ShapeMismatch);
    CHECK_THROWS_AS(check_block_inequalities(H, {3, 0}), ShapeMismatch);
}

TEST_CASE("spectrum_type_matches_matrix_dimension") {
    QuantumGraph c7 = from_classical(cycle_adj(7));
    Spectrum s = eig_hermitian(c7.adjacency());
    CHECK(s.values.size() == 7);
    Inertia in = classify_inertia(s);
    CHECK(in.positive + in.zero + in.negative == 7);
}
