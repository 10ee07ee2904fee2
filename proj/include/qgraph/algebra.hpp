#pragma once

#include <memory>
#include <numeric>
#include <vector>

#include "qgraph/linalg.hpp"

namespace qgraph {

// Block structure of a finite-dimensional C*-algebra: a direct sum of full
// matrix algebras with sizes n_1, ..., n_N.
struct AlgebraSpec {
    std::vector<int> blocks;

    AlgebraSpec() = default;
    explicit AlgebraSpec(std::vector<int> b) : blocks(std::move(b)) { check(); }

    void check() const {
        if (blocks.empty()) throw ShapeMismatch("AlgebraSpec: block list is empty");
        for (int n : blocks)
            if (n < 1) throw ShapeMismatch("AlgebraSpec: block sizes must be positive");
    }

    int dim() const {
        int d = 0;
        for (int n : blocks) d += n * n;
        return d;
    }

    bool operator==(const AlgebraSpec& other) const { return blocks == other.blocks; }
};

// An element of the algebra: one complex matrix per block.
class AlgebraElement {
public:
    explicit AlgebraElement(const AlgebraSpec& spec) : spec_(spec) {
        blocks_.reserve(spec.blocks.size());
        for (int n : spec.blocks) blocks_.push_back(Matrix::Zero(n, n));
    }

    static AlgebraElement identity(const AlgebraSpec& spec) {
        AlgebraElement x(spec);
        for (std::size_t i = 0; i < x.blocks_.size(); ++i)
            x.blocks_[i] = Matrix::Identity(spec.blocks[i], spec.blocks[i]);
        return x;
    }

    const AlgebraSpec& spec() const { return spec_; }
    Matrix& block(int i) { return blocks_[i]; }
    const Matrix& block(int i) const { return blocks_[i]; }
    int num_blocks() const { return static_cast<int>(blocks_.size()); }

    AlgebraElement operator*(const AlgebraElement& rhs) const {
        require_same_spec(rhs);
        AlgebraElement out(spec_);
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            out.blocks_[i] = blocks_[i] * rhs.blocks_[i];
        return out;
    }

    AlgebraElement operator+(const AlgebraElement& rhs) const {
        require_same_spec(rhs);
        AlgebraElement out(spec_);
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            out.blocks_[i] = blocks_[i] + rhs.blocks_[i];
        return out;
    }

    AlgebraElement operator*(Complex s) const {
        AlgebraElement out(spec_);
        for (std::size_t i = 0; i < blocks_.size(); ++i) out.blocks_[i] = s * blocks_[i];
        return out;
    }

    // Blockwise conjugate transpose.
    AlgebraElement adjoint() const {
        AlgebraElement out(spec_);
        for (std::size_t i = 0; i < blocks_.size(); ++i)
            out.blocks_[i] = blocks_[i].adjoint();
        return out;
    }

private:
    void require_same_spec(const AlgebraElement& rhs) const {
        if (!(spec_ == rhs.spec_)) throw ShapeMismatch("AlgebraElement: spec mismatch");
    }

    AlgebraSpec spec_;
    std::vector<Matrix> blocks_;
};

// A quantum set (M, psi): the algebra together with its unique tracial
// delta-form psi = (1/dim M) (+)_i n_i Tr, the GNS space L^2(M, psi), and the
// multiplication map m with its Hilbert-space adjoint m*.
//
// The canonical GNS basis is fixed once and for all (file formats and
// adjacency matrices depend on it): blocks in spec order; within block i the
// matrix units e_{jk} in row-major order (j outer, k inner), each scaled by
// sqrt(dim(M)/n_i). Tensor factors of L^2(M) (x) L^2(M) are indexed with the
// left factor outermost.
class AlgebraContext {
public:
    explicit AlgebraContext(AlgebraSpec spec) : spec_(std::move(spec)) {
        spec_.check();
        dim_ = spec_.dim();
        delta_sq_ = static_cast<double>(dim_);

        offsets_.resize(spec_.blocks.size());
        int off = 0;
        for (std::size_t i = 0; i < spec_.blocks.size(); ++i) {
            offsets_[i] = off;
            off += spec_.blocks[i] * spec_.blocks[i];
        }

        m_matrix_.setZero(dim_, dim_ * dim_);
        for (int a = 0; a < dim_; ++a) {
            AlgebraElement ba = basis_element(a);
            for (int b = 0; b < dim_; ++b) {
                Vector col = to_gns(ba * basis_element(b));
                m_matrix_.col(static_cast<Eigen::Index>(a) * dim_ + b) = col;
            }
        }
        m_star_matrix_ = m_matrix_.adjoint();

        unit_vector_ = to_gns(AlgebraElement::identity(spec_));

        star_matrix_.setZero(dim_, dim_);
        for (std::size_t i = 0; i < spec_.blocks.size(); ++i) {
            int n = spec_.blocks[i];
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    star_matrix_(gns_index(static_cast<int>(i), k, j),
                                 gns_index(static_cast<int>(i), j, k)) = 1.0;
        }
    }

    const AlgebraSpec& spec() const { return spec_; }
    int dim() const { return dim_; }
    double delta_sq() const { return delta_sq_; }

    // Multiplication map L^2(M) (x) L^2(M) -> L^2(M) on the canonical bases.
    const Matrix& mult_matrix() const { return m_matrix_; }
    const Matrix& mult_adjoint_matrix() const { return m_star_matrix_; }

    // GNS vector of the unit; has norm 1 since psi(1) = 1.
    const Vector& unit_vector() const { return unit_vector_; }

    // Permutation implementing x -> x* on GNS coordinates up to conjugation:
    // to_gns(x*) = star_matrix() * conj(to_gns(x)).
    const Matrix& star_matrix() const { return star_matrix_; }

    int gns_index(int block, int row, int col) const {
        return offsets_[block] + row * spec_.blocks[block] + col;
    }

    // The basis element at GNS index a: the scaled matrix unit
    // sqrt(dim/n_i) e_{jk}.
    AlgebraElement basis_element(int a) const {
        AlgebraElement x(spec_);
        auto [i, j, k] = locate(a);
        x.block(i)(j, k) = scale(i);
        return x;
    }

    Complex psi(const AlgebraElement& x) const {
        require_conforming(x);
        Complex acc = 0.0;
        for (std::size_t i = 0; i < spec_.blocks.size(); ++i)
            acc += static_cast<double>(spec_.blocks[i]) * x.block(static_cast<int>(i)).trace();
        return acc / delta_sq_;
    }

    // GNS inner product <x, y> = psi(y* x) = to_gns(y)^dagger to_gns(x).
    Complex inner(const AlgebraElement& x, const AlgebraElement& y) const {
        return psi(y.adjoint() * x);
    }

    Vector to_gns(const AlgebraElement& x) const {
        require_conforming(x);
        Vector v(dim_);
        for (std::size_t i = 0; i < spec_.blocks.size(); ++i) {
            int n = spec_.blocks[i];
            double inv = 1.0 / scale(static_cast<int>(i));
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    v(gns_index(static_cast<int>(i), j, k)) = x.block(static_cast<int>(i))(j, k) * inv;
        }
        return v;
    }

    AlgebraElement from_gns(const Vector& v) const {
        if (v.size() != dim_) throw ShapeMismatch("from_gns: wrong vector length");
        AlgebraElement x(spec_);
        for (std::size_t i = 0; i < spec_.blocks.size(); ++i) {
            int n = spec_.blocks[i];
            double s = scale(static_cast<int>(i));
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    x.block(static_cast<int>(i))(j, k) = v(gns_index(static_cast<int>(i), j, k)) * s;
        }
        return x;
    }

    // m* applied to the GNS vector of x, as an element of L^2(M) (x) L^2(M).
    Vector mult_adjoint_apply(const AlgebraElement& x) const {
        return m_star_matrix_ * to_gns(x);
    }

    // Matrix of y -> x y on the GNS basis.
    Matrix left_mult_op(const AlgebraElement& x) const {
        require_conforming(x);
        Matrix op(dim_, dim_);
        for (int a = 0; a < dim_; ++a) op.col(a) = to_gns(x * basis_element(a));
        return op;
    }

    // Matrix of y -> y x on the GNS basis; an element of the commutant M'.
    Matrix right_mult_op(const AlgebraElement& x) const {
        require_conforming(x);
        Matrix op(dim_, dim_);
        for (int a = 0; a < dim_; ++a) op.col(a) = to_gns(basis_element(a) * x);
        return op;
    }

    // Spanning set {right_mult_op(b_a)} of the commutant M' in B(L^2(M)).
    std::vector<Matrix> commutant_basis() const {
        std::vector<Matrix> basis;
        basis.reserve(dim_);
        for (int a = 0; a < dim_; ++a) basis.push_back(right_mult_op(basis_element(a)));
        return basis;
    }

private:
    std::tuple<int, int, int> locate(int a) const {
        for (std::size_t i = 0; i < spec_.blocks.size(); ++i) {
            int n = spec_.blocks[i];
            if (a < offsets_[i] + n * n) {
                int rel = a - offsets_[i];
                return {static_cast<int>(i), rel / n, rel % n};
            }
        }
        throw ShapeMismatch("basis index out of range");
    }

    double scale(int block) const {
        return std::sqrt(delta_sq_ / spec_.blocks[block]);
    }

    void require_conforming(const AlgebraElement& x) const {
        if (!(x.spec() == spec_)) throw ShapeMismatch("element does not conform to the algebra spec");
    }

    AlgebraSpec spec_;
    int dim_ = 0;
    double delta_sq_ = 0.0;
    std::vector<int> offsets_;
    Matrix m_matrix_;
    Matrix m_star_matrix_;
    Vector unit_vector_;
    Matrix star_matrix_;
};

using ContextPtr = std::shared_ptr<const AlgebraContext>;

inline ContextPtr build_context(AlgebraSpec spec) {
    return std::make_shared<const AlgebraContext>(std::move(spec));
}

inline ContextPtr build_context(std::vector<int> blocks) {
    return build_context(AlgebraSpec(std::move(blocks)));
}

}  // namespace qgraph
