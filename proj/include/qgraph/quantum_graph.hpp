#pragma once

#include <Eigen/Eigenvalues>
#include <utility>

#include "qgraph/algebra.hpp"

namespace qgraph {

// Residuals (scale-normalized Frobenius norms) for the quantum adjacency
// axioms, with pass/fail verdicts at the tolerance the report was built with.
struct AxiomReport {
    double tolerance = kDefaultTolerance;

    double schur_idempotent = 0.0;    // delta^-2 m(A(x)A)m* = A
    double undirected = 0.0;          // (I (x) eta* m)(I (x) A (x) I)(m* eta (x) I) = A
    double self_adjoint = 0.0;        // A = A^dagger
    double star_preserving = 0.0;     // A(x*) = (A x)*
    double reflexive = 0.0;           // m(A (x) I)m* = delta^2 I
    double irreflexive = 0.0;         // m(A (x) I)m* = 0
    double completely_positive = 0.0; // min Choi eigenvalue >= 0

    bool schur_idempotent_ok() const { return schur_idempotent < tolerance; }
    bool undirected_ok() const { return undirected < tolerance; }
    bool self_adjoint_ok() const { return self_adjoint < tolerance; }
    bool star_preserving_ok() const { return star_preserving < tolerance; }
    bool reflexive_ok() const { return reflexive < tolerance; }
    bool irreflexive_ok() const { return irreflexive < tolerance; }
    bool completely_positive_ok() const { return completely_positive < tolerance; }

    // The admission gate for a (possibly reflexive) undirected quantum graph.
    // Complete positivity is reported but not required.
    bool required_ok() const {
        return schur_idempotent_ok() && undirected_ok() && self_adjoint_ok() &&
               star_preserving_ok();
    }
};

// Quantum Schur product delta^-2 m (X (x) Y) m*. Coincides with the entrywise
// product of matrices on the GNS basis when every block has size 1.
inline Matrix schur_product(const AlgebraContext& ctx, const Matrix& X, const Matrix& Y) {
    const int d = ctx.dim();
    if (X.rows() != d || X.cols() != d || Y.rows() != d || Y.cols() != d)
        throw ShapeMismatch("schur_product: operands must be dim x dim");
    return (ctx.mult_matrix() * kron(X, Y) * ctx.mult_adjoint_matrix()) / ctx.delta_sq();
}

// Superoperator matrix (on column-major vectorized operators) of
// X -> delta^-2 m (A (x) X) m*.
inline Matrix schur_superoperator_matrix(const AlgebraContext& ctx, const Matrix& A) {
    const int d = ctx.dim();
    Matrix super(d * d, d * d);
    Matrix unit = Matrix::Zero(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) {
            unit(i, j) = 1.0;
            super.col(static_cast<Eigen::Index>(j) * d + i) = vec(schur_product(ctx, A, unit));
            unit(i, j) = 0.0;
        }
    return super;
}

inline AxiomReport validate(const AlgebraContext& ctx, const Matrix& A,
                            double tol = kDefaultTolerance) {
    const int d = ctx.dim();
    if (A.rows() != d || A.cols() != d)
        throw ShapeMismatch("validate: adjacency must be dim x dim");

    AxiomReport report;
    report.tolerance = tol;

    report.schur_idempotent = residual(schur_product(ctx, A, A), A);
    report.self_adjoint = hermiticity_residual(A);

    // Star preservation A(x*) = (A x)* reads A S = S conj(A) with S the
    // involution permutation on GNS coordinates.
    const Matrix& S = ctx.star_matrix();
    report.star_preserving =
        (A * S - S * A.conjugate()).norm() / std::max(1.0, A.norm());

    // The undirected identity contracts to W A^T R with W, R the dim x dim
    // reshapes of m* applied to the unit and of psi composed with m.
    const Vector& u = ctx.unit_vector();
    Vector w = ctx.mult_adjoint_matrix() * u;
    Eigen::RowVectorXcd r = u.adjoint() * ctx.mult_matrix();
    Matrix W(d, d), R(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            W(a, b) = w(static_cast<Eigen::Index>(a) * d + b);
            R(a, b) = r(static_cast<Eigen::Index>(a) * d + b);
        }
    report.undirected = residual(W * A.transpose() * R, A);

    Matrix loops = ctx.mult_matrix() * kron(A, Matrix::Identity(d, d)) *
                   ctx.mult_adjoint_matrix();
    report.reflexive =
        (loops - ctx.delta_sq() * Matrix::Identity(d, d)).norm() / ctx.delta_sq();
    report.irreflexive = loops.norm() / ctx.delta_sq();

    // Complete positivity of A reads as positivity of the induced bimodule map
    // delta^-2 m(A (x) .)m* as an operator on the Hilbert-Schmidt space, i.e.
    // the superoperator matrix factors as G*G. In the classical case this is
    // exactly "all entries of A are nonnegative".
    Matrix super = schur_superoperator_matrix(ctx, A);
    double cp_herm = (super - super.adjoint()).norm();
    Eigen::SelfAdjointEigenSolver<Matrix> es((super + super.adjoint()) / 2.0,
                                             Eigen::EigenvaluesOnly);
    double lo = es.eigenvalues().minCoeff();
    double hi = es.eigenvalues().maxCoeff();
    report.completely_positive =
        (std::max(0.0, -lo) + cp_herm) / std::max(1.0, std::abs(hi));

    return report;
}

// A quantum graph in the adjacency picture: an algebra context plus a quantum
// adjacency operator on L^2(M), with its axiom report cached. Immutable.
class QuantumGraph {
public:
    QuantumGraph(ContextPtr ctx, Matrix adjacency, double tol = kDefaultTolerance)
        : ctx_(std::move(ctx)),
          adjacency_(std::move(adjacency)),
          axioms_(validate(*ctx_, adjacency_, tol)) {}

    const AlgebraContext& ctx() const { return *ctx_; }
    const ContextPtr& ctx_ptr() const { return ctx_; }
    const Matrix& adjacency() const { return adjacency_; }
    const AxiomReport& axioms() const { return axioms_; }

    bool is_irreflexive() const { return axioms_.irreflexive_ok(); }
    bool is_reflexive() const { return axioms_.reflexive_ok(); }

private:
    ContextPtr ctx_;
    Matrix adjacency_;
    AxiomReport axioms_;
};

// Embeds a classical graph: context (1,...,1), adjacency matrix taken verbatim
// on the canonical GNS basis.
inline QuantumGraph from_classical(const Eigen::MatrixXi& adj,
                                   double tol = kDefaultTolerance) {
    const int n = static_cast<int>(adj.rows());
    if (adj.cols() != n || n < 1)
        throw ShapeMismatch("from_classical: adjacency must be square and nonempty");
    for (int i = 0; i < n; ++i) {
        if (adj(i, i) != 0) throw ShapeMismatch("from_classical: diagonal must be zero");
        for (int j = 0; j < n; ++j) {
            if (adj(i, j) != adj(j, i))
                throw ShapeMismatch("from_classical: adjacency must be symmetric");
            if (adj(i, j) != 0 && adj(i, j) != 1)
                throw ShapeMismatch("from_classical: entries must be 0 or 1");
        }
    }
    ContextPtr ctx = build_context(std::vector<int>(n, 1));
    return QuantumGraph(ctx, adj.cast<Complex>(), tol);
}

// Complete quantum graph delta^2 psi(.) 1 (reflexive) or delta^2 psi(.) 1 - I
// (irreflexive); on the GNS basis the rank-one part is delta^2 |1><1|.
inline QuantumGraph complete_graph(ContextPtr ctx, bool reflexive = false,
                                   double tol = kDefaultTolerance) {
    const Vector& u = ctx->unit_vector();
    Matrix A = ctx->delta_sq() * (u * u.adjoint());
    if (!reflexive) A -= Matrix::Identity(ctx->dim(), ctx->dim());
    return QuantumGraph(std::move(ctx), std::move(A), tol);
}

inline QuantumGraph empty_graph(ContextPtr ctx, double tol = kDefaultTolerance) {
    const int d = ctx->dim();
    return QuantumGraph(std::move(ctx), Matrix::Zero(d, d), tol);
}

}  // namespace qgraph
