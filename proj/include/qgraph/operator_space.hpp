#pragma once

#include <Eigen/SVD>
#include <utility>
#include <vector>

#include "qgraph/quantum_graph.hpp"

namespace qgraph {

// A self-adjoint M'-bimodule subspace S of B(L^2(M)), stored as an orthonormal
// basis under the trace inner product <X, Y> = Tr(Y^dagger X).
struct OperatorSubspace {
    ContextPtr ctx;
    std::vector<Matrix> basis;

    int dim() const { return static_cast<int>(basis.size()); }

    // Orthogonal projection of X onto the span of the basis.
    Matrix project(const Matrix& X) const {
        Matrix out = Matrix::Zero(X.rows(), X.cols());
        for (const Matrix& b : basis) out += b * (b.conjugate().cwiseProduct(X)).sum();
        return out;
    }
};

// A linear map on B(L^2(M)) stored as a dim^2 x dim^2 matrix acting on
// column-major vectorized operators.
struct Superoperator {
    ContextPtr ctx;
    Matrix matrix;

    Matrix apply(const Matrix& X) const {
        const int d = ctx->dim();
        if (X.rows() != d || X.cols() != d)
            throw ShapeMismatch("Superoperator::apply: operand must be dim x dim");
        return unvec(matrix * vec(X), d, d);
    }
};

struct SubspaceDiagnostics {
    double self_adjoint = 0.0;  // B^dagger stays in the span
    double bimodule = 0.0;      // E B F stays in the span, E,F in M'
    double irreflexive = 0.0;   // S is trace-orthogonal to M'
};

inline SubspaceDiagnostics subspace_diagnostics(const OperatorSubspace& S) {
    SubspaceDiagnostics diag;
    std::vector<Matrix> commutant = S.ctx->commutant_basis();
    for (const Matrix& B : S.basis) {
        Matrix adj = B.adjoint();
        diag.self_adjoint = std::max(diag.self_adjoint, (adj - S.project(adj)).norm());
        for (const Matrix& E : commutant) {
            diag.irreflexive = std::max(
                diag.irreflexive,
                std::abs((E.conjugate().cwiseProduct(B)).sum()) / std::max(1.0, E.norm()));
            for (const Matrix& F : commutant) {
                Matrix moved = E * B * F;
                diag.bimodule =
                    std::max(diag.bimodule,
                             (moved - S.project(moved)).norm() / std::max(1.0, moved.norm()));
            }
        }
    }
    return diag;
}

// Orthonormalizes a spanning set into an OperatorSubspace, with the rank
// cutoff at singular values below tol * sigma_max, then checks the subspace
// axioms and throws on violation.
inline OperatorSubspace subspace_from_spanning(ContextPtr ctx,
                                               const std::vector<Matrix>& spanning,
                                               double tol = kDefaultTolerance,
                                               bool require_irreflexive = true) {
    if (spanning.empty()) throw ShapeMismatch("subspace_from_spanning: empty spanning set");
    const int d = ctx->dim();
    Matrix stacked(d * d, static_cast<Eigen::Index>(spanning.size()));
    for (std::size_t j = 0; j < spanning.size(); ++j) {
        if (spanning[j].rows() != d || spanning[j].cols() != d)
            throw ShapeMismatch("subspace_from_spanning: operators must be dim x dim");
        stacked.col(static_cast<Eigen::Index>(j)) = vec(spanning[j]);
    }

    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    double cutoff = sv.size() > 0 ? tol * sv(0) : 0.0;

    OperatorSubspace S{std::move(ctx), {}};
    for (Eigen::Index j = 0; j < sv.size(); ++j)
        if (sv(j) > cutoff) S.basis.push_back(unvec(svd.matrixU().col(j), d, d));

    SubspaceDiagnostics diag = subspace_diagnostics(S);
    if (diag.self_adjoint >= tol)
        throw NotSelfAdjoint("span is not closed under adjoint", diag.self_adjoint);
    if (diag.bimodule >= tol)
        throw NotBimodule("span is not a bimodule over the commutant", diag.bimodule);
    if (require_irreflexive && diag.irreflexive >= tol)
        throw NotIrreflexive("span is not orthogonal to the commutant", diag.irreflexive);
    return S;
}

// The unique orthogonal bimodule projection with range S:
// P(X) = sum_j B_j Tr(B_j^dagger X).
inline Superoperator projection_onto(const OperatorSubspace& S) {
    const int d = S.ctx->dim();
    Matrix P = Matrix::Zero(d * d, d * d);
    for (const Matrix& B : S.basis) {
        Vector v = vec(B);
        P += v * v.adjoint();
    }
    return Superoperator{S.ctx, std::move(P)};
}

// Superoperator X -> delta^-2 m (A (x) X) m* induced by a quantum adjacency
// matrix; its range recovers S and it fixes A itself.
inline Superoperator projection_from_adjacency(ContextPtr ctx, const Matrix& A) {
    Matrix super = schur_superoperator_matrix(*ctx, A);
    return Superoperator{std::move(ctx), std::move(super)};
}

// Recovers the quantum adjacency matrix from a bimodule projection: expands P
// over the superoperator basis E_ab = b_a (.) b_b, with both factors acting in
// the standard (left multiplication) representation of M -- these span the
// M'-bimodule maps on B(L^2(M)). The expansion is a least-squares fit (the
// E_ab are trace-orthogonal with norm^2 = dim^2, so the solution is the
// orthogonal projection); the residual is verified, then
// A(x) = delta^2 sum_ab c_ab psi(b_a x) b_b.
inline Matrix adjacency_from_projection(const Superoperator& P,
                                        double tol = kDefaultTolerance) {
    const AlgebraContext& ctx = *P.ctx;
    const int d = ctx.dim();
    const double d2 = static_cast<double>(d) * d;

    std::vector<Matrix> left(d);
    for (int a = 0; a < d; ++a) left[a] = ctx.left_mult_op(ctx.basis_element(a));

    Matrix coeff(d, d);
    Matrix recon = Matrix::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            Matrix basis_ab = kron(left[b].transpose(), left[a]);
            Complex c = (basis_ab.conjugate().cwiseProduct(P.matrix)).sum() / d2;
            coeff(a, b) = c;
            recon += c * basis_ab;
        }

    double rel = (P.matrix - recon).norm() / std::max(1.0, P.matrix.norm());
    if (rel >= tol)
        throw DecompositionResidualTooLarge(
            "superoperator is not a bimodule map over the commutant", rel);

    const Vector& u = ctx.unit_vector();
    Matrix A = Matrix::Zero(d, d);
    for (int a = 0; a < d; ++a) {
        Eigen::RowVectorXcd row = u.adjoint() * left[a];
        for (int b = 0; b < d; ++b) A += coeff(a, b) * (ctx.to_gns(ctx.basis_element(b)) * row);
    }
    return ctx.delta_sq() * A;
}

// Orthonormal basis of the column space of P's matrix; the numerical rank uses
// the cutoff tol * sigma_max (idempotents have singular values near {0,1}).
inline OperatorSubspace range_of(const Superoperator& P, double tol = kDefaultTolerance) {
    const int d = P.ctx->dim();
    Eigen::JacobiSVD<Matrix> svd(P.matrix, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    double cutoff = sv.size() > 0 ? tol * sv(0) : 0.0;
    OperatorSubspace S{P.ctx, {}};
    for (Eigen::Index j = 0; j < sv.size(); ++j)
        if (sv(j) > cutoff) S.basis.push_back(unvec(svd.matrixU().col(j), d, d));
    return S;
}

}  // namespace qgraph
