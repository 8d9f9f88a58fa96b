#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hochlab/field.hpp"

namespace hochlab {

using Vec = std::vector<Scalar>;

// Pivot column order used by rref/solve.  forward is the default everywhere;
// reversed exists so callers can force a second, different pivot solution.
enum class PivotOrder { forward, reversed };

// Dense or sparse exact matrix over Q or F_p.  Storage is chosen by pack()
// with a 25% density threshold; freshly built matrices are sparse maps.
class Matrix {
public:
    Matrix() : Matrix(0, 0, FieldSpec::rationals()) {}
    Matrix(int rows, int cols, FieldSpec f);

    static Matrix identity(int n, const FieldSpec& f);
    static Matrix zero(int rows, int cols, const FieldSpec& f) { return Matrix(rows, cols, f); }
    static Matrix from_column(const Vec& v, const FieldSpec& f);
    static Matrix from_columns(int rows, const std::vector<Vec>& cols, const FieldSpec& f);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const FieldSpec& field() const { return field_; }
    bool is_dense() const { return dense_; }

    Scalar at(int r, int c) const;
    void set(int r, int c, const Scalar& v);
    void add_at(int r, int c, const Scalar& v) { set(r, c, at(r, c) + v); }
    void pack();

    long nnz() const;
    bool is_zero() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator*(const Scalar& s) const;
    Matrix operator-() const;
    Matrix transpose() const;
    Vec apply(const Vec& v) const;

    static Matrix kron(const Matrix& a, const Matrix& b);
    static Matrix hstack(const std::vector<Matrix>& blocks);
    static Matrix vstack(const std::vector<Matrix>& blocks);
    // block diagonal
    static Matrix diag(const std::vector<Matrix>& blocks);

    Vec column(int c) const;
    Matrix columns(const std::vector<int>& idx) const;

    // Reduced row echelon form; pivots are leftmost-nonzero with first-row
    // tie-break, so bases are reproducible across runs.
    std::pair<Matrix, std::vector<int>> rref(PivotOrder order = PivotOrder::forward) const;
    int rank() const;
    Matrix kernel_basis_matrix() const;
    Matrix column_space_matrix() const;

    std::optional<Vec> solve(const Vec& rhs, PivotOrder order = PivotOrder::forward) const;
    std::optional<Matrix> solve_matrix(const Matrix& rhs,
                                       PivotOrder order = PivotOrder::forward) const;
    std::optional<Matrix> inverse() const;

    // iteration over nonzero entries, row-major
    template <typename F>
    void for_each_nonzero(F&& f) const {
        if (dense_) {
            for (int r = 0; r < rows_; ++r)
                for (int c = 0; c < cols_; ++c) {
                    const Scalar& v = d_[static_cast<size_t>(r) * cols_ + c];
                    if (!v.is_zero()) f(r, c, v);
                }
        } else {
            for (const auto& [rc, v] : s_)
                if (!v.is_zero()) f(rc.first, rc.second, v);
        }
    }

private:
    int rows_, cols_;
    FieldSpec field_;
    bool dense_ = false;
    std::vector<Scalar> d_;                       // row-major, when dense
    std::map<std::pair<int, int>, Scalar> s_;     // (row,col) -> value, when sparse

    // working form for elimination: sorted sparse rows
    using SparseRow = std::vector<std::pair<int, Scalar>>;
    std::vector<SparseRow> to_sparse_rows() const;
};

// Subspace of K^ambient, spanned by linearly independent column vectors.
class Subspace {
public:
    Subspace() = default;
    Subspace(int ambient_dim, const FieldSpec& f)
        : ambient_(ambient_dim), basis_(ambient_dim, 0, f) {}
    // reduces the given spanning columns to an independent basis
    static Subspace span(const Matrix& vectors);
    static Subspace full(int ambient_dim, const FieldSpec& f);

    int ambient_dim() const { return ambient_; }
    int dim() const { return basis_.cols(); }
    const Matrix& basis() const { return basis_; }
    const FieldSpec& field() const { return basis_.field(); }

    bool contains(const Vec& v) const;
    bool contains(const Subspace& other) const;
    bool same_span(const Subspace& other) const;
    std::optional<Vec> coordinates(const Vec& v) const;

    static Subspace intersect(const Subspace& a, const Subspace& b);
    static Subspace sum(const Subspace& a, const Subspace& b);

private:
    int ambient_ = 0;
    Matrix basis_;  // ambient x dim, independent columns
};

// K^ambient modulo a subspace of relations, with a stored section of the
// projection (projection . section = identity on the quotient).
class QuotientSpace {
public:
    QuotientSpace() = default;
    static QuotientSpace make(int ambient_dim, const Subspace& relations);

    int ambient_dim() const { return ambient_; }
    int dim() const { return projection_.rows(); }
    const Subspace& relations() const { return relations_; }
    const Matrix& projection() const { return projection_; }  // dim x ambient
    const Matrix& section() const { return section_; }        // ambient x dim

    // factor a map g (out of the ambient space) through the projection;
    // requires g to annihilate every relation vector
    Matrix induce_from(const Matrix& g) const;

private:
    int ambient_ = 0;
    Subspace relations_;
    Matrix projection_, section_;
};

// incremental builder for inhomogeneous linear systems (morphism searches,
// splitting tests, braiding equations)
class LinearSystem {
public:
    explicit LinearSystem(const FieldSpec& f) : field_(f) {}
    int add_vars(int n);
    int add_row();
    void add_coeff(int row, int var, const Scalar& s);
    void set_rhs(int row, const Scalar& s);
    int num_vars() const { return nvars_; }
    std::optional<Vec> solve(PivotOrder order = PivotOrder::forward) const;
    // homogeneous solution space
    Subspace kernel() const;

private:
    FieldSpec field_;
    int nvars_ = 0;
    std::vector<std::map<int, Scalar>> rows_;
    Vec rhs_;
};

Vec zero_vec(int n, const FieldSpec& f);
Vec unit_vec(int n, int i, const FieldSpec& f);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Scalar& s, const Vec& a);
bool is_zero_vec(const Vec& v);

}  // namespace hochlab
