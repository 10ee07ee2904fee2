#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "qgraph/operator_space.hpp"
#include "qgraph/spectra.hpp"

namespace qgraph {

// A claimed c-coloring of a quantum graph: projections {P_a} in M (x) M_h
// acting on L^2(M) (x) C^h, with L^2(M) the outer tensor factor. Verification
// is a separate report, never a construction-time requirement.
struct ColoringCertificate {
    int colors = 0;
    int aux_dim = 0;
    std::vector<Matrix> projections;
};

struct CertReport {
    double tolerance = kDefaultTolerance;

    std::vector<double> idempotent;    // per color: P_a^2 = P_a
    std::vector<double> self_adjoint;  // per color: P_a = P_a^dagger
    std::vector<double> membership;    // per color: [P_a, E (x) I_h] = 0 over M' basis
    double sum_to_identity = 0.0;      // sum_a P_a = I
    std::vector<std::vector<double>> annihilation;  // per color, per S-basis element

    bool verdict = false;

    double max_residual() const {
        double m = sum_to_identity;
        for (double r : idempotent) m = std::max(m, r);
        for (double r : self_adjoint) m = std::max(m, r);
        for (double r : membership) m = std::max(m, r);
        for (const auto& row : annihilation)
            for (double r : row) m = std::max(m, r);
        return m;
    }
};

inline CertReport verify_certificate(const QuantumGraph& G, const OperatorSubspace& S,
                                     const ColoringCertificate& cert,
                                     double tol = kDefaultTolerance) {
    const int d = G.ctx().dim();
    const int h = cert.aux_dim;
    if (cert.colors < 1 || h < 1 ||
        static_cast<int>(cert.projections.size()) != cert.colors)
        throw ShapeMismatch("certificate must carry one projection per color");
    const Eigen::Index side = static_cast<Eigen::Index>(d) * h;
    for (const Matrix& P : cert.projections)
        if (P.rows() != side || P.cols() != side)
            throw ShapeMismatch("certificate projections must act on L^2(M) (x) C^h");

    CertReport rep;
    rep.tolerance = tol;

    Matrix aux_id = Matrix::Identity(h, h);
    std::vector<Matrix> commutant = G.ctx().commutant_basis();

    Matrix total = Matrix::Zero(side, side);
    for (const Matrix& P : cert.projections) {
        total += P;
        rep.idempotent.push_back(residual(P * P, P));
        rep.self_adjoint.push_back(hermiticity_residual(P));
        double memb = 0.0;
        for (const Matrix& E : commutant)
            memb = std::max(memb, commutator_residual(P, kron(E, aux_id)));
        rep.membership.push_back(memb);
    }
    rep.sum_to_identity = residual(total, Matrix::Identity(side, side));

    for (const Matrix& P : cert.projections) {
        std::vector<double> row;
        for (const Matrix& X : S.basis) {
            Matrix lifted = kron(X, aux_id);
            row.push_back((P * lifted * P).norm() / std::max(1.0, lifted.norm()));
        }
        rep.annihilation.push_back(std::move(row));
    }

    rep.verdict = rep.max_residual() < tol;
    return rep;
}

// Pinching: summing the compressions P_k (.) P_k annihilates the adjacency
// operator and fixes the commutant.
struct PinchingReport {
    double annihilates_adjacency = 0.0;
    double fixes_commutant = 0.0;
    std::vector<double> diagonal_blocks;  // per color: P_a (A (x) I) P_a = 0
};

inline PinchingReport check_pinching(const QuantumGraph& G, const ColoringCertificate& cert,
                                     double /*tol*/ = kDefaultTolerance) {
    const int h = cert.aux_dim;
    Matrix aux_id = Matrix::Identity(h, h);
    Matrix lifted = kron(G.adjacency(), aux_id);
    double lifted_scale = std::max(1.0, lifted.norm());

    PinchingReport rep;
    Matrix pinched = Matrix::Zero(lifted.rows(), lifted.cols());
    for (const Matrix& P : cert.projections) {
        Matrix block = P * lifted * P;
        rep.diagonal_blocks.push_back(block.norm() / lifted_scale);
        pinched += block;
    }
    rep.annihilates_adjacency = pinched.norm() / lifted_scale;

    for (const Matrix& E : G.ctx().commutant_basis()) {
        Matrix target = kron(E, aux_id);
        Matrix sum = Matrix::Zero(target.rows(), target.cols());
        for (const Matrix& P : cert.projections) sum += P * target * P;
        rep.fixes_commutant = std::max(rep.fixes_commutant, residual(sum, target));
    }
    return rep;
}

// Twirling: with U = sum_l omega^l P_l (omega a primitive c-th root of unity),
// the averaged conjugations sum_k U^k (.) (U*)^k reproduce c times the
// pinching, annihilate the adjacency and scale the commutant by c.
struct TwirlingReport {
    double unitary = 0.0;                // U U^dagger = I
    double power_identity = 0.0;         // U^c = I
    double annihilates_adjacency = 0.0;  // sum_k U^k (A (x) I) (U*)^k = 0
    double scales_commutant = 0.0;       // sum_k U^k (E (x) I) (U*)^k = c E (x) I
    double matches_pinching = 0.0;       // twirl X = c * pinch X on random probes
    bool degenerate = false;             // c = 1 collapses every identity
};

inline TwirlingReport check_twirling(const QuantumGraph& G, const ColoringCertificate& cert,
                                     double /*tol*/ = kDefaultTolerance,
                                     std::uint64_t seed = 0, int probes = 4) {
    const int c = cert.colors;
    const int d = G.ctx().dim();
    const int h = cert.aux_dim;
    const Eigen::Index side = static_cast<Eigen::Index>(d) * h;
    Matrix aux_id = Matrix::Identity(h, h);

    Matrix U = Matrix::Zero(side, side);
    for (int l = 1; l <= c; ++l) {
        Complex omega = std::polar(1.0, 2.0 * M_PI * l / c);
        U += omega * cert.projections[static_cast<std::size_t>(l) - 1];
    }

    TwirlingReport rep;
    rep.degenerate = (c == 1);
    Matrix eye = Matrix::Identity(side, side);
    rep.unitary = residual(U * U.adjoint(), eye);

    std::vector<Matrix> powers(static_cast<std::size_t>(c) + 1);
    powers[0] = eye;
    for (int k = 1; k <= c; ++k) powers[static_cast<std::size_t>(k)] = powers[k - 1] * U;
    rep.power_identity = residual(powers[static_cast<std::size_t>(c)], eye);

    auto twirl = [&](const Matrix& X) {
        Matrix sum = Matrix::Zero(side, side);
        for (int k = 1; k <= c; ++k)
            sum += powers[static_cast<std::size_t>(k)] * X *
                   powers[static_cast<std::size_t>(k)].adjoint();
        return sum;
    };

    Matrix lifted_a = kron(G.adjacency(), aux_id);
    rep.annihilates_adjacency = twirl(lifted_a).norm() / std::max(1.0, lifted_a.norm());

    for (const Matrix& E : G.ctx().commutant_basis()) {
        Matrix target = kron(E, aux_id);
        rep.scales_commutant =
            std::max(rep.scales_commutant,
                     residual(twirl(target), Matrix(double(c) * target)));
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int p = 0; p < probes; ++p) {
        Matrix X(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) X(i, j) = Complex(gauss(rng), gauss(rng));
        Matrix lifted = kron(X, aux_id);
        Matrix pinch = Matrix::Zero(side, side);
        for (const Matrix& P : cert.projections) pinch += P * lifted * P;
        rep.matches_pinching =
            std::max(rep.matches_pinching, residual(twirl(lifted), Matrix(double(c) * pinch)));
    }
    return rep;
}

namespace detail {

inline void require_classical_adjacency(const Eigen::MatrixXi& adj) {
    const int n = static_cast<int>(adj.rows());
    if (adj.cols() != n || n < 1) throw ShapeMismatch("adjacency must be square and nonempty");
    for (int i = 0; i < n; ++i) {
        if (adj(i, i) != 0) throw ShapeMismatch("adjacency diagonal must be zero");
        for (int j = 0; j < n; ++j)
            if (adj(i, j) != adj(j, i) || (adj(i, j) != 0 && adj(i, j) != 1))
                throw ShapeMismatch("adjacency must be a symmetric 0/1 matrix");
    }
}

// Next vertex by saturation, breaking ties by degree then index. Returns -1
// when everything is colored.
inline int dsatur_pick(const Eigen::MatrixXi& adj, const std::vector<int>& colors) {
    const int n = static_cast<int>(adj.rows());
    int best = -1, best_sat = -1, best_deg = -1;
    for (int v = 0; v < n; ++v) {
        if (colors[v] >= 0) continue;
        std::vector<bool> seen;
        int sat = 0, deg = 0;
        for (int u = 0; u < n; ++u) {
            if (!adj(v, u)) continue;
            ++deg;
            if (colors[u] >= 0) {
                if (static_cast<int>(seen.size()) <= colors[u]) seen.resize(colors[u] + 1);
                if (!seen[colors[u]]) {
                    seen[colors[u]] = true;
                    ++sat;
                }
            }
        }
        if (sat > best_sat || (sat == best_sat && deg > best_deg)) {
            best = v;
            best_sat = sat;
            best_deg = deg;
        }
    }
    return best;
}

inline std::vector<int> dsatur_greedy_coloring(const Eigen::MatrixXi& adj) {
    const int n = static_cast<int>(adj.rows());
    std::vector<int> colors(n, -1);
    for (int step = 0; step < n; ++step) {
        int v = dsatur_pick(adj, colors);
        std::vector<bool> used(n, false);
        for (int u = 0; u < n; ++u)
            if (adj(v, u) && colors[u] >= 0) used[colors[u]] = true;
        int c = 0;
        while (used[c]) ++c;
        colors[v] = c;
    }
    return colors;
}

inline int greedy_clique_size(const Eigen::MatrixXi& adj) {
    const int n = static_cast<int>(adj.rows());
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return adj.row(a).sum() > adj.row(b).sum();
    });
    std::vector<int> clique;
    for (int v : order) {
        bool fits = true;
        for (int u : clique)
            if (!adj(v, u)) {
                fits = false;
                break;
            }
        if (fits) clique.push_back(v);
    }
    return static_cast<int>(clique.size());
}

inline bool k_colorable_rec(const Eigen::MatrixXi& adj, int k, std::vector<int>& colors,
                            int colored, int max_used) {
    if (colored == static_cast<int>(colors.size())) return true;
    int v = dsatur_pick(adj, colors);
    std::vector<bool> blocked(k, false);
    for (int u = 0; u < static_cast<int>(colors.size()); ++u)
        if (adj(v, u) && colors[u] >= 0) blocked[colors[u]] = true;
    int limit = std::min(k - 1, max_used + 1);
    for (int c = 0; c <= limit; ++c) {
        if (blocked[c]) continue;
        colors[v] = c;
        if (k_colorable_rec(adj, k, colors, colored + 1, std::max(max_used, c))) return true;
        colors[v] = -1;
    }
    return false;
}

}  // namespace detail

// Exact chromatic number by DSATUR-ordered branch and bound with a greedy
// clique lower bound; deterministic. Capped at 20 vertices.
inline int classical_chromatic(const Eigen::MatrixXi& adj) {
    detail::require_classical_adjacency(adj);
    const int n = static_cast<int>(adj.rows());
    if (n > 20) throw TooLarge("chromatic number is capped at 20 vertices");

    std::vector<int> greedy = detail::dsatur_greedy_coloring(adj);
    int upper = 1 + *std::max_element(greedy.begin(), greedy.end());
    int lower = detail::greedy_clique_size(adj);
    for (int k = lower; k < upper; ++k) {
        std::vector<int> colors(n, -1);
        if (detail::k_colorable_rec(adj, k, colors, 0, -1)) return k;
    }
    return upper;
}

// A proper classical coloring (colors 0..c-1) becomes an h = 1 certificate:
// P_a is the diagonal projection onto the color class.
inline ColoringCertificate cert_from_classical_coloring(const Eigen::MatrixXi& adj,
                                                        const std::vector<int>& coloring) {
    detail::require_classical_adjacency(adj);
    const int n = static_cast<int>(adj.rows());
    if (static_cast<int>(coloring.size()) != n)
        throw ShapeMismatch("coloring must assign a color to every vertex");
    for (int v = 0; v < n; ++v)
        if (coloring[v] < 0) throw ShapeMismatch("colors must be nonnegative");
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (adj(u, v) && coloring[u] == coloring[v]) throw ImproperColoring(u, v);

    ColoringCertificate cert;
    cert.colors = 1 + *std::max_element(coloring.begin(), coloring.end());
    cert.aux_dim = 1;
    cert.projections.assign(static_cast<std::size_t>(cert.colors), Matrix::Zero(n, n));
    for (int v = 0; v < n; ++v)
        cert.projections[static_cast<std::size_t>(coloring[v])](v, v) = 1.0;
    return cert;
}

// A c = dim(M), h = dim(M) coloring of the irreflexive complete quantum graph.
//
// P_a projects onto (rho(M) U_a (x) I) Phi, with Phi the normalized maximally
// entangled vector over the GNS basis and U_a = V^a for the shift-and-multiply
// unitary V = (cyclic shift) diag(z). The phases z are consecutive ratios of
// W(i,j,k) = exp(2 pi i jk / n_i): annihilation of S = (M')^perp and
// membership in M (x) M_h hold for any unitary U_a, while sum-to-identity
// reduces to the orthogonality of each block's W-columns (a DFT matrix).
// The checker is the authority: the result is verified before it is returned
// and ConstructionFailed carries the worst residual otherwise.
inline ColoringCertificate cert_for_complete(ContextPtr ctx,
                                             double tol = kDefaultTolerance) {
    const AlgebraContext& alg = *ctx;
    const int d = alg.dim();

    Vector prefix(d);
    {
        const auto& blocks = alg.spec().blocks;
        int pos = 0;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            int n = blocks[i];
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    prefix(pos++) = std::polar(1.0, 2.0 * M_PI * j * k / n);
        }
    }
    Matrix shift = Matrix::Zero(d, d);
    for (int x = 0; x < d; ++x) shift((x + 1) % d, x) = prefix((x + 1) % d) / prefix(x);

    ColoringCertificate cert;
    cert.colors = d;
    cert.aux_dim = d;

    std::vector<Matrix> rights;
    rights.reserve(d);
    for (int a = 0; a < d; ++a) rights.push_back(alg.right_mult_op(alg.basis_element(a)));

    Matrix power = Matrix::Identity(d, d);
    for (int a = 0; a < d; ++a) {
        Matrix P = Matrix::Zero(static_cast<Eigen::Index>(d) * d,
                                static_cast<Eigen::Index>(d) * d);
        for (int alpha = 0; alpha < d; ++alpha) {
            Matrix entangled = rights[static_cast<std::size_t>(alpha)] * power;
            Vector xi(static_cast<Eigen::Index>(d) * d);
            for (int x = 0; x < d; ++x)
                for (int s = 0; s < d; ++s)
                    xi(static_cast<Eigen::Index>(x) * d + s) =
                        entangled(x, s) / std::sqrt(double(d));
            P += xi * xi.adjoint();
        }
        cert.projections.push_back(std::move(P));
        power = shift * power;
    }

    QuantumGraph K = complete_graph(ctx, /*reflexive=*/false, tol);
    OperatorSubspace S = range_of(projection_from_adjacency(ctx, K.adjacency()), tol);
    CertReport rep = verify_certificate(K, S, cert, tol);
    if (!rep.verdict)
        throw ConstructionFailed("complete-graph certificate failed verification",
                                 rep.max_residual());
    return cert;
}

}  // namespace qgraph
