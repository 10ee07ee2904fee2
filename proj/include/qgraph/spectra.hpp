#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <vector>

#include "qgraph/operator_space.hpp"
#include "qgraph/quantum_graph.hpp"

namespace qgraph {

// Real eigenvalues in descending order, with orthonormal eigenvectors in
// matching column order.
struct Spectrum {
    RealVector values;
    Matrix vectors;

    double lambda_max() const { return values(0); }
    double lambda_min() const { return values(values.size() - 1); }
};

inline Spectrum eig_hermitian(const Matrix& H, double tol = kDefaultTolerance) {
    if (H.rows() != H.cols()) throw ShapeMismatch("eig_hermitian: matrix must be square");
    double herm = hermiticity_residual(H);
    if (herm >= tol) throw NotHermitian("matrix is not self-adjoint", herm);

    Eigen::SelfAdjointEigenSolver<Matrix> es((H + H.adjoint()) / 2.0);
    Spectrum s;
    s.values = es.eigenvalues().reverse();
    s.vectors = es.eigenvectors().rowwise().reverse();
    return s;
}

struct Inertia {
    int positive = 0;
    int zero = 0;
    int negative = 0;
};

// Eigenvalue sign classification threshold: tol scaled by the spectral radius.
inline double sign_threshold(const Spectrum& s, double tol) {
    return tol * std::max({1.0, std::abs(s.lambda_max()), std::abs(s.lambda_min())});
}

inline Inertia classify_inertia(const Spectrum& s, double tol = kDefaultTolerance) {
    double tau = sign_threshold(s, tol);
    Inertia in;
    for (Eigen::Index i = 0; i < s.values.size(); ++i) {
        if (s.values(i) > tau)
            ++in.positive;
        else if (s.values(i) < -tau)
            ++in.negative;
        else
            ++in.zero;
    }
    return in;
}

// Quantum degree matrix: right multiplication by A1; an element of M' with
// Tr(D) = dim(S).
inline Matrix degree_matrix(const QuantumGraph& G) {
    const AlgebraContext& ctx = G.ctx();
    return ctx.right_mult_op(ctx.from_gns(G.adjacency() * ctx.unit_vector()));
}

// Laplacian L = D - A and signless Laplacian Q = D + A.
inline std::pair<Matrix, Matrix> laplacians(const QuantumGraph& G) {
    if (!G.is_irreflexive())
        throw GraphNotIrreflexive("laplacians are defined for irreflexive graphs");
    Matrix D = degree_matrix(G);
    return {D - G.adjacency(), D + G.adjacency()};
}

struct SpectralBound {
    double value = 1.0;
    bool applicable = false;
};

// The five spectral lower bounds on the (quantum) chromatic number, with the
// ingredients they are computed from. A degenerate denominator marks the bound
// inapplicable with the trivial value 1.
struct BoundsReport {
    double tolerance = kDefaultTolerance;

    int dim_M = 0;
    double edge_number_2m = 0.0;  // dim(S) = Tr(D)
    double lambda_max = 0.0, lambda_min = 0.0;
    double s_plus = 0.0, s_minus = 0.0;
    Inertia inertia_counts;
    double gamma_max = 0.0, gamma_min = 0.0;  // signless Laplacian extremes
    double theta_max = 0.0;                   // Laplacian maximum

    SpectralBound hoffman;      // 1 + lambda_max / |lambda_min|
    SpectralBound edge;         // 1 + dim(S) / (dim(S) - dim(M) gamma_min)
    SpectralBound sum_squares;  // 1 + max(s+/s-, s-/s+)
    SpectralBound inertia;      // 1 + max(n+/n-, n-/n+)
    SpectralBound laplacian;    // 1 + lambda_max / (lambda_max - gamma_max + theta_max)

    double best = 1.0;
};

inline BoundsReport all_bounds(const QuantumGraph& G, double tol = kDefaultTolerance) {
    if (!G.is_irreflexive())
        throw GraphNotIrreflexive("spectral bounds require an irreflexive graph");

    BoundsReport rep;
    rep.tolerance = tol;
    rep.dim_M = G.ctx().dim();

    Spectrum spec = eig_hermitian(G.adjacency(), tol);
    double tau = sign_threshold(spec, tol);
    rep.lambda_max = spec.lambda_max();
    rep.lambda_min = spec.lambda_min();
    for (Eigen::Index i = 0; i < spec.values.size(); ++i) {
        double v = spec.values(i);
        if (v > tau)
            rep.s_plus += v * v;
        else if (v < -tau)
            rep.s_minus += v * v;
    }
    rep.inertia_counts = classify_inertia(spec, tol);

    rep.edge_number_2m =
        range_of(projection_from_adjacency(G.ctx_ptr(), G.adjacency()), tol).dim();

    auto [L, Q] = laplacians(G);
    Spectrum lspec = eig_hermitian(L, tol);
    Spectrum qspec = eig_hermitian(Q, tol);
    rep.theta_max = lspec.lambda_max();
    rep.gamma_max = qspec.lambda_max();
    rep.gamma_min = qspec.lambda_min();

    if (std::abs(rep.lambda_min) > tau)
        rep.hoffman = {1.0 + rep.lambda_max / std::abs(rep.lambda_min), true};

    double edge_denom = rep.edge_number_2m - rep.dim_M * rep.gamma_min;
    if (edge_denom > tau) rep.edge = {1.0 + rep.edge_number_2m / edge_denom, true};

    if (rep.s_plus > tau * tau && rep.s_minus > tau * tau)
        rep.sum_squares = {
            1.0 + std::max(rep.s_plus / rep.s_minus, rep.s_minus / rep.s_plus), true};

    if (rep.inertia_counts.positive > 0 && rep.inertia_counts.negative > 0) {
        double np = rep.inertia_counts.positive;
        double nm = rep.inertia_counts.negative;
        rep.inertia = {1.0 + std::max(np / nm, nm / np), true};
    }

    double lap_denom = rep.lambda_max - rep.gamma_max + rep.theta_max;
    if (lap_denom > tau) rep.laplacian = {1.0 + rep.lambda_max / lap_denom, true};

    rep.best = 1.0;
    for (const SpectralBound* b :
         {&rep.hoffman, &rep.edge, &rep.sum_squares, &rep.inertia, &rep.laplacian})
        if (b->applicable) rep.best = std::max(rep.best, b->value);
    return rep;
}

// Slack values for the two block-partition eigenvalue inequalities used by the
// bounds; all must be >= -eps for self-adjoint inputs.
struct BlockInequalityReport {
    // sum_i lambda_max(H_ii) - ((r-1) lambda_min(H) + lambda_max(H))
    double compression_slack = 0.0;
    // With B - C the spectral split of H after zeroing its diagonal blocks
    // (so B, C are PSD, share diagonal blocks, and BC = 0):
    double split_slack_pos = 0.0;  // (r-1) Tr(C*C) - Tr(B*B)
    double split_slack_neg = 0.0;  // (r-1) Tr(B*B) - Tr(C*C)
};

inline BlockInequalityReport check_block_inequalities(const Matrix& H,
                                                      const std::vector<int>& partition,
                                                      double tol = kDefaultTolerance) {
    int total = 0;
    for (int p : partition) {
        if (p < 1) throw ShapeMismatch("partition sizes must be positive");
        total += p;
    }
    if (partition.empty() || total != H.rows())
        throw ShapeMismatch("partition must sum to the matrix size");

    const int r = static_cast<int>(partition.size());
    Spectrum full = eig_hermitian(H, tol);

    BlockInequalityReport rep;
    double diag_max_sum = 0.0;
    int off = 0;
    for (int p : partition) {
        diag_max_sum += eig_hermitian(Matrix(H.block(off, off, p, p)), tol).lambda_max();
        off += p;
    }
    rep.compression_slack =
        diag_max_sum - ((r - 1) * full.lambda_min() + full.lambda_max());

    Matrix hollow = H;
    off = 0;
    for (int p : partition) {
        hollow.block(off, off, p, p).setZero();
        off += p;
    }
    Spectrum hs = eig_hermitian(hollow, tol);
    double tau = sign_threshold(hs, tol);
    Matrix B = Matrix::Zero(H.rows(), H.cols());
    Matrix C = Matrix::Zero(H.rows(), H.cols());
    for (Eigen::Index i = 0; i < hs.values.size(); ++i) {
        double v = hs.values(i);
        Matrix outer = hs.vectors.col(i) * hs.vectors.col(i).adjoint();
        if (v > tau)
            B += v * outer;
        else if (v < -tau)
            C -= v * outer;
    }
    double tb = (B.adjoint() * B).trace().real();
    double tc = (C.adjoint() * C).trace().real();
    rep.split_slack_pos = (r - 1) * tc - tb;
    rep.split_slack_neg = (r - 1) * tb - tc;
    return rep;
}

}  // namespace qgraph
