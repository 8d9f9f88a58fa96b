#include "hochlab/matrix.hpp"

#include <algorithm>

namespace hochlab {

Matrix::Matrix(int rows, int cols, FieldSpec f) : rows_(rows), cols_(cols), field_(f) {
    HL_CHECK(rows >= 0 && cols >= 0, "negative matrix dimensions");
}

Matrix Matrix::identity(int n, const FieldSpec& f) {
    Matrix m(n, n, f);
    for (int i = 0; i < n; ++i) m.set(i, i, Scalar::one(f));
    return m;
}

Matrix Matrix::from_column(const Vec& v, const FieldSpec& f) {
    Matrix m(static_cast<int>(v.size()), 1, f);
    for (int i = 0; i < m.rows_; ++i) m.set(i, 0, v[i]);
    return m;
}

Matrix Matrix::from_columns(int rows, const std::vector<Vec>& cols, const FieldSpec& f) {
    Matrix m(rows, static_cast<int>(cols.size()), f);
    for (int c = 0; c < m.cols_; ++c) {
        HL_CHECK(static_cast<int>(cols[c].size()) == rows, "column length mismatch");
        for (int r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
    }
    return m;
}

Scalar Matrix::at(int r, int c) const {
    HL_CHECK(r >= 0 && r < rows_ && c >= 0 && c < cols_, "matrix index out of range");
    if (dense_) return d_[static_cast<size_t>(r) * cols_ + c];
    auto it = s_.find({r, c});
    return it == s_.end() ? Scalar::zero(field_) : it->second;
}

void Matrix::set(int r, int c, const Scalar& v) {
    HL_CHECK(r >= 0 && r < rows_ && c >= 0 && c < cols_, "matrix index out of range");
    HL_CHECK(v.field() == field_, "scalar field mismatch");
    if (dense_) {
        d_[static_cast<size_t>(r) * cols_ + c] = v;
    } else if (v.is_zero()) {
        s_.erase({r, c});
    } else {
        s_[{r, c}] = v;
    }
}

void Matrix::pack() {
    if (rows_ == 0 || cols_ == 0) return;
    double density = static_cast<double>(nnz()) / (static_cast<double>(rows_) * cols_);
    bool want_dense = density > 0.25;
    if (want_dense == dense_) return;
    if (want_dense) {
        d_.assign(static_cast<size_t>(rows_) * cols_, Scalar::zero(field_));
        for (auto& [rc, v] : s_) d_[static_cast<size_t>(rc.first) * cols_ + rc.second] = v;
        s_.clear();
        dense_ = true;
    } else {
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) {
                Scalar& v = d_[static_cast<size_t>(r) * cols_ + c];
                if (!v.is_zero()) s_[{r, c}] = v;
            }
        d_.clear();
        dense_ = false;
    }
}

long Matrix::nnz() const {
    long n = 0;
    for_each_nonzero([&](int, int, const Scalar&) { ++n; });
    return n;
}

bool Matrix::is_zero() const {
    bool z = true;
    for_each_nonzero([&](int, int, const Scalar&) { z = false; });
    return z;
}

bool Matrix::operator==(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || !(field_ == o.field_)) return false;
    bool eq = true;
    for_each_nonzero([&](int r, int c, const Scalar& v) {
        if (o.at(r, c) != v) eq = false;
    });
    o.for_each_nonzero([&](int r, int c, const Scalar& v) {
        if (at(r, c) != v) eq = false;
    });
    return eq;
}

Matrix Matrix::operator+(const Matrix& o) const {
    HL_CHECK(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch in +");
    Matrix out = *this;
    o.for_each_nonzero([&](int r, int c, const Scalar& v) { out.set(r, c, out.at(r, c) + v); });
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    HL_CHECK(rows_ == o.rows_ && cols_ == o.cols_, "matrix shape mismatch in -");
    Matrix out = *this;
    o.for_each_nonzero([&](int r, int c, const Scalar& v) { out.set(r, c, out.at(r, c) - v); });
    return out;
}

Matrix Matrix::operator-() const {
    Matrix out(rows_, cols_, field_);
    for_each_nonzero([&](int r, int c, const Scalar& v) { out.set(r, c, -v); });
    return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
    HL_CHECK(cols_ == o.rows_, "matrix shape mismatch in *");
    // gather rhs rows once so both representations multiply the same way
    std::vector<std::vector<std::pair<int, Scalar>>> orows(o.rows_);
    o.for_each_nonzero([&](int r, int c, const Scalar& v) { orows[r].emplace_back(c, v); });
    Matrix out(rows_, o.cols_, field_);
    for_each_nonzero([&](int r, int k, const Scalar& v) {
        for (const auto& [c, w] : orows[k]) out.set(r, c, out.at(r, c) + v * w);
    });
    out.pack();
    return out;
}

Matrix Matrix::operator*(const Scalar& s) const {
    Matrix out(rows_, cols_, field_);
    if (s.is_zero()) return out;
    for_each_nonzero([&](int r, int c, const Scalar& v) { out.set(r, c, v * s); });
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_, field_);
    for_each_nonzero([&](int r, int c, const Scalar& v) { out.set(c, r, v); });
    return out;
}

Vec Matrix::apply(const Vec& v) const {
    HL_CHECK(static_cast<int>(v.size()) == cols_, "vector length mismatch in apply");
    Vec out(rows_, Scalar::zero(field_));
    for_each_nonzero([&](int r, int c, const Scalar& w) {
        if (!v[c].is_zero()) out[r] = out[r] + w * v[c];
    });
    return out;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
    HL_CHECK(a.field_ == b.field_, "field mismatch in kron");
    Matrix out(a.rows_ * b.rows_, a.cols_ * b.cols_, a.field_);
    a.for_each_nonzero([&](int ra, int ca, const Scalar& va) {
        b.for_each_nonzero([&](int rb, int cb, const Scalar& vb) {
            out.set(ra * b.rows_ + rb, ca * b.cols_ + cb, va * vb);
        });
    });
    return out;
}

Matrix Matrix::hstack(const std::vector<Matrix>& blocks) {
    HL_CHECK(!blocks.empty(), "hstack of nothing");
    int rows = blocks[0].rows_, cols = 0;
    for (const auto& b : blocks) {
        HL_CHECK(b.rows_ == rows, "row mismatch in hstack");
        cols += b.cols_;
    }
    Matrix out(rows, cols, blocks[0].field_);
    int off = 0;
    for (const auto& b : blocks) {
        b.for_each_nonzero([&](int r, int c, const Scalar& v) { out.set(r, off + c, v); });
        off += b.cols_;
    }
    return out;
}

Matrix Matrix::vstack(const std::vector<Matrix>& blocks) {
    HL_CHECK(!blocks.empty(), "vstack of nothing");
    int cols = blocks[0].cols_, rows = 0;
    for (const auto& b : blocks) {
        HL_CHECK(b.cols_ == cols, "column mismatch in vstack");
        rows += b.rows_;
    }
    Matrix out(rows, cols, blocks[0].field_);
    int off = 0;
    for (const auto& b : blocks) {
        b.for_each_nonzero([&](int r, int c, const Scalar& v) { out.set(off + r, c, v); });
        off += b.rows_;
    }
    return out;
}

Matrix Matrix::diag(const std::vector<Matrix>& blocks) {
    HL_CHECK(!blocks.empty(), "diag of nothing");
    int rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows_;
        cols += b.cols_;
    }
    Matrix out(rows, cols, blocks[0].field_);
    int ro = 0, co = 0;
    for (const auto& b : blocks) {
        b.for_each_nonzero([&](int r, int c, const Scalar& v) { out.set(ro + r, co + c, v); });
        ro += b.rows_;
        co += b.cols_;
    }
    return out;
}

Vec Matrix::column(int c) const {
    Vec v(rows_, Scalar::zero(field_));
    for (int r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

Matrix Matrix::columns(const std::vector<int>& idx) const {
    Matrix out(rows_, static_cast<int>(idx.size()), field_);
    for (int j = 0; j < out.cols_; ++j)
        for (int r = 0; r < rows_; ++r) out.set(r, j, at(r, idx[j]));
    return out;
}

std::vector<Matrix::SparseRow> Matrix::to_sparse_rows() const {
    std::vector<SparseRow> rows(rows_);
    for_each_nonzero([&](int r, int c, const Scalar& v) { rows[r].emplace_back(c, v); });
    for (auto& row : rows)
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    return rows;
}

namespace {

using SparseRow = std::vector<std::pair<int, Scalar>>;

// dst -= f * src, both sorted by column
SparseRow row_axpy(const SparseRow& dst, const Scalar& f, const SparseRow& src,
                   const FieldSpec& field) {
    SparseRow out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, -(f * src[j].second));
            ++j;
        } else {
            Scalar v = dst[i].second - f * src[j].second;
            if (!v.is_zero()) out.emplace_back(dst[i].first, v);
            ++i;
            ++j;
        }
    }
    (void)field;
    return out;
}

Scalar row_coeff(const SparseRow& row, int col, const FieldSpec& field) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != row.end() && it->first == col) return it->second;
    return Scalar::zero(field);
}

// full Gauss-Jordan on sparse rows; returns reduced rows and pivot columns
std::pair<std::vector<SparseRow>, std::vector<int>> eliminate_rows(std::vector<SparseRow> rows,
                                                                   int cols,
                                                                   const FieldSpec& field) {
    std::vector<int> pivots;
    int next = 0;
    for (int col = 0; col < cols && next < static_cast<int>(rows.size()); ++col) {
        int pr = -1;
        for (int r = next; r < static_cast<int>(rows.size()); ++r) {
            if (!rows[r].empty() && rows[r].front().first == col) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        std::swap(rows[next], rows[pr]);
        Scalar inv = rows[next].front().second.inv();
        for (auto& e : rows[next]) e.second = e.second * inv;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == next) continue;
            Scalar c = row_coeff(rows[r], col, field);
            if (!c.is_zero()) rows[r] = row_axpy(rows[r], c, rows[next], field);
        }
        pivots.push_back(col);
        ++next;
    }
    rows.resize(pivots.size());
    return {std::move(rows), std::move(pivots)};
}

std::vector<int> order_columns(int cols, PivotOrder order) {
    std::vector<int> perm(cols);
    for (int i = 0; i < cols; ++i)
        perm[i] = order == PivotOrder::forward ? i : cols - 1 - i;
    return perm;
}

}  // namespace

std::pair<Matrix, std::vector<int>> Matrix::rref(PivotOrder order) const {
    auto rows = to_sparse_rows();
    if (order == PivotOrder::reversed) {
        for (auto& row : rows) {
            for (auto& e : row) e.first = cols_ - 1 - e.first;
            std::sort(row.begin(), row.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
        }
    }
    auto [red, piv] = eliminate_rows(std::move(rows), cols_, field_);
    Matrix out(rows_, cols_, field_);
    for (int r = 0; r < static_cast<int>(red.size()); ++r)
        for (auto& [c, v] : red[r])
            out.set(r, order == PivotOrder::forward ? c : cols_ - 1 - c, v);
    if (order == PivotOrder::reversed)
        for (auto& p : piv) p = cols_ - 1 - p;
    return {std::move(out), std::move(piv)};
}

int Matrix::rank() const {
    auto [red, piv] = eliminate_rows(to_sparse_rows(), cols_, field_);
    return static_cast<int>(piv.size());
}

Matrix Matrix::kernel_basis_matrix() const {
    auto [red, piv] = eliminate_rows(to_sparse_rows(), cols_, field_);
    std::vector<bool> is_pivot(cols_, false);
    for (int p : piv) is_pivot[p] = true;
    Matrix out(cols_, cols_ - static_cast<int>(piv.size()), field_);
    int j = 0;
    for (int free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        out.set(free, j, Scalar::one(field_));
        for (size_t r = 0; r < piv.size(); ++r) {
            Scalar v = row_coeff(red[r], free, field_);
            if (!v.is_zero()) out.set(piv[r], j, -v);
        }
        ++j;
    }
    return out;
}

Matrix Matrix::column_space_matrix() const {
    // pivot columns of the original matrix form a basis of the image
    auto [red, piv] = eliminate_rows(to_sparse_rows(), cols_, field_);
    return columns(piv);
}

std::optional<Matrix> Matrix::solve_matrix(const Matrix& rhs, PivotOrder order) const {
    HL_CHECK(rhs.rows() == rows_, "rhs row count mismatch in solve");
    // eliminate the augmented matrix [this | rhs]; variable columns may be
    // visited in reversed order, augmented columns always come last
    std::vector<int> perm = order_columns(cols_, order);
    std::vector<int> inv(cols_);
    for (int i = 0; i < cols_; ++i) inv[perm[i]] = i;
    std::vector<SparseRow> rows(rows_);
    for_each_nonzero([&](int r, int c, const Scalar& v) { rows[r].emplace_back(inv[c], v); });
    rhs.for_each_nonzero([&](int r, int c, const Scalar& v) { rows[r].emplace_back(cols_ + c, v); });
    for (auto& row : rows)
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    auto [red, piv] = eliminate_rows(std::move(rows), cols_ + rhs.cols(), field_);
    Matrix x(cols_, rhs.cols(), field_);
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] >= cols_) return std::nullopt;  // pivot in the rhs block: inconsistent
        for (auto& [c, v] : red[r])
            if (c >= cols_) x.set(perm[piv[r]], c - cols_, v);
    }
    return x;
}

std::optional<Vec> Matrix::solve(const Vec& rhs, PivotOrder order) const {
    auto m = solve_matrix(Matrix::from_column(rhs, field_), order);
    if (!m) return std::nullopt;
    return m->column(0);
}

std::optional<Matrix> Matrix::inverse() const {
    HL_CHECK(rows_ == cols_, "inverse of a non-square matrix");
    auto x = solve_matrix(identity(rows_, field_));
    if (!x) return std::nullopt;
    // solve() finds some preimage; a singular matrix still fails because
    // identity columns outside the column space are inconsistent
    if (!((*x * *this) == identity(rows_, field_))) return std::nullopt;
    if (!((*this * *x) == identity(rows_, field_))) return std::nullopt;
    return x;
}

Subspace Subspace::span(const Matrix& vectors) {
    Subspace s;
    s.ambient_ = vectors.rows();
    s.basis_ = vectors.column_space_matrix();
    return s;
}

Subspace Subspace::full(int ambient_dim, const FieldSpec& f) {
    return span(Matrix::identity(ambient_dim, f));
}

bool Subspace::contains(const Vec& v) const {
    if (is_zero_vec(v)) return true;
    return basis_.solve(v).has_value();
}

bool Subspace::contains(const Subspace& other) const {
    HL_CHECK(ambient_ == other.ambient_, "ambient dimension mismatch");
    return basis_.solve_matrix(other.basis_).has_value();
}

bool Subspace::same_span(const Subspace& other) const {
    return dim() == other.dim() && contains(other);
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const { return basis_.solve(v); }

Subspace Subspace::intersect(const Subspace& a, const Subspace& b) {
    HL_CHECK(a.ambient_ == b.ambient_, "ambient dimension mismatch");
    if (a.dim() == 0 || b.dim() == 0) return Subspace(a.ambient_, a.field());
    // null space of [A | -B] gives pairs of coordinates with equal value
    Matrix stacked = Matrix::hstack({a.basis_, -b.basis_});
    Matrix ker = stacked.kernel_basis_matrix();
    Matrix vecs(a.ambient_, ker.cols(), a.field());
    for (int j = 0; j < ker.cols(); ++j) {
        Vec coeff(a.dim(), Scalar::zero(a.field()));
        for (int i = 0; i < a.dim(); ++i) coeff[i] = ker.at(i, j);
        Vec v = a.basis_.apply(coeff);
        for (int r = 0; r < a.ambient_; ++r) vecs.set(r, j, v[r]);
    }
    return span(vecs);
}

Subspace Subspace::sum(const Subspace& a, const Subspace& b) {
    HL_CHECK(a.ambient_ == b.ambient_, "ambient dimension mismatch");
    return span(Matrix::hstack({a.basis_, b.basis_}));
}

QuotientSpace QuotientSpace::make(int ambient_dim, const Subspace& relations) {
    HL_CHECK(relations.ambient_dim() == ambient_dim, "relation ambient mismatch");
    const FieldSpec f = relations.field();
    QuotientSpace q;
    q.ambient_ = ambient_dim;
    q.relations_ = relations;
    auto [red, piv] = relations.basis().transpose().rref();
    std::vector<bool> is_pivot(ambient_dim, false);
    for (int p : piv) is_pivot[p] = true;
    std::vector<int> free;
    for (int c = 0; c < ambient_dim; ++c)
        if (!is_pivot[c]) free.push_back(c);
    int qdim = static_cast<int>(free.size());
    q.projection_ = Matrix(qdim, ambient_dim, f);
    q.section_ = Matrix(ambient_dim, qdim, f);
    for (int j = 0; j < qdim; ++j) {
        q.projection_.set(j, free[j], Scalar::one(f));
        q.section_.set(free[j], j, Scalar::one(f));
        // reduce pivot coordinates modulo the relations
        for (size_t i = 0; i < piv.size(); ++i) {
            Scalar v = red.at(static_cast<int>(i), free[j]);
            if (!v.is_zero()) q.projection_.set(j, piv[i], q.projection_.at(j, piv[i]) - v);
        }
    }
    return q;
}

Matrix QuotientSpace::induce_from(const Matrix& g) const {
    HL_CHECK(g.cols() == ambient_, "map domain mismatch in induce_from");
    HL_CHECK((g * relations_.basis()).is_zero(), "map does not annihilate the relations");
    return g * section_;
}

int LinearSystem::add_vars(int n) {
    int off = nvars_;
    nvars_ += n;
    return off;
}

int LinearSystem::add_row() {
    rows_.emplace_back();
    rhs_.push_back(Scalar::zero(field_));
    return static_cast<int>(rows_.size()) - 1;
}

void LinearSystem::add_coeff(int row, int var, const Scalar& s) {
    HL_CHECK(var >= 0 && var < nvars_, "variable index out of range");
    auto it = rows_[row].find(var);
    if (it == rows_[row].end())
        rows_[row][var] = s;
    else
        it->second = it->second + s;
}

void LinearSystem::set_rhs(int row, const Scalar& s) { rhs_[row] = s; }

std::optional<Vec> LinearSystem::solve(PivotOrder order) const {
    Matrix m(static_cast<int>(rows_.size()), nvars_, field_);
    for (size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r]) m.set(static_cast<int>(r), c, v);
    return m.solve(rhs_, order);
}

Subspace LinearSystem::kernel() const {
    Matrix m(static_cast<int>(rows_.size()), nvars_, field_);
    for (size_t r = 0; r < rows_.size(); ++r)
        for (const auto& [c, v] : rows_[r]) m.set(static_cast<int>(r), c, v);
    return Subspace::span(m.kernel_basis_matrix());
}

Vec zero_vec(int n, const FieldSpec& f) { return Vec(n, Scalar::zero(f)); }

Vec unit_vec(int n, int i, const FieldSpec& f) {
    Vec v(n, Scalar::zero(f));
    v[i] = Scalar::one(f);
    return v;
}

Vec add(const Vec& a, const Vec& b) {
    HL_CHECK(a.size() == b.size(), "vector length mismatch");
    Vec out(a);
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

Vec sub(const Vec& a, const Vec& b) {
    HL_CHECK(a.size() == b.size(), "vector length mismatch");
    Vec out(a);
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

Vec scale(const Scalar& s, const Vec& a) {
    Vec out(a);
    for (auto& v : out) v = v * s;
    return out;
}

bool is_zero_vec(const Vec& v) {
    for (const auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace hochlab
