#include "hochlab/algebra.hpp"

#include <algorithm>

namespace hochlab {

void Algebra::finalize() {
    HL_CHECK(static_cast<int>(unit.size()) == dim, "unit vector length mismatch");
    if (basis_names.empty())
        for (int i = 0; i < dim; ++i) basis_names.push_back("e" + std::to_string(i));
    left_mult.assign(dim, Matrix(dim, dim, field));
    right_mult.assign(dim, Matrix(dim, dim, field));
    mult = Matrix(dim, dim * dim, field);
    for (const auto& [i, j, k, v] : table) {
        HL_CHECK(i >= 0 && i < dim && j >= 0 && j < dim && k >= 0 && k < dim,
                 "structure constant index out of range");
        left_mult[i].add_at(k, j, v);
        right_mult[j].add_at(k, i, v);
        mult.add_at(k, i * dim + j, v);
    }
}

std::vector<std::string> Algebra::validate() const {
    std::vector<std::string> report;
    if (static_cast<int>(unit.size()) != dim) {
        report.push_back("unit vector has wrong length");
        return report;
    }
    // unit axiom
    Matrix lu = left_action(unit), ru = right_action(unit);
    Matrix id = Matrix::identity(dim, field);
    if (!(lu == id)) report.push_back("unit * e_i != e_i (left unit axiom fails)");
    if (!(ru == id)) report.push_back("e_i * unit != e_i (right unit axiom fails)");
    // associativity on basis triples: L_{e_i e_j} = L_i L_j suffices
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            Matrix lhs = left_mult[i] * left_mult[j];
            Matrix rhs(dim, dim, field);
            for (int k = 0; k < dim; ++k) {
                Scalar c = mult.at(k, i * dim + j);
                if (!c.is_zero()) rhs = rhs + left_mult[k] * c;
            }
            if (!(lhs == rhs))
                report.push_back("associativity fails at (e_" + std::to_string(i) + ", e_" +
                                 std::to_string(j) + ", -)");
        }
    return report;
}

Vec Algebra::multiply(const Vec& x, const Vec& y) const {
    HL_CHECK(static_cast<int>(x.size()) == dim && static_cast<int>(y.size()) == dim,
             "vector length mismatch in multiply");
    Vec out = zero_vec(dim, field);
    for (int i = 0; i < dim; ++i) {
        if (x[i].is_zero()) continue;
        Vec col = left_mult[i].apply(y);
        for (int k = 0; k < dim; ++k) out[k] = out[k] + x[i] * col[k];
    }
    return out;
}

Matrix Algebra::left_action(const Vec& z) const {
    HL_CHECK(static_cast<int>(z.size()) == dim, "vector length mismatch");
    Matrix out(dim, dim, field);
    for (int i = 0; i < dim; ++i)
        if (!z[i].is_zero()) out = out + left_mult[i] * z[i];
    return out;
}

Matrix Algebra::right_action(const Vec& z) const {
    HL_CHECK(static_cast<int>(z.size()) == dim, "vector length mismatch");
    Matrix out(dim, dim, field);
    for (int i = 0; i < dim; ++i)
        if (!z[i].is_zero()) out = out + right_mult[i] * z[i];
    return out;
}

bool Algebra::is_commutative() const {
    for (int i = 0; i < dim; ++i)
        if (!(left_mult[i] == right_mult[i])) return false;
    return true;
}

AlgebraPtr make_algebra(Algebra a) {
    a.finalize();
    auto report = a.validate();
    if (!report.empty()) {
        std::string msg = "invalid algebra:";
        for (const auto& r : report) msg += "\n  " + r;
        throw ValidationError(msg);
    }
    return std::make_shared<const Algebra>(std::move(a));
}

std::vector<std::string> Bimodule::validate() const {
    std::vector<std::string> report;
    const Algebra& a = *algebra;
    if (static_cast<int>(left.size()) != a.dim || static_cast<int>(right.size()) != a.dim) {
        report.push_back("action matrix count != dim A");
        return report;
    }
    for (int i = 0; i < a.dim; ++i)
        if (left[i].rows() != dim || left[i].cols() != dim || right[i].rows() != dim ||
            right[i].cols() != dim) {
            report.push_back("action matrix shape mismatch");
            return report;
        }
    Matrix id = Matrix::identity(dim, a.field);
    if (!(left_action(a.unit) == id)) report.push_back("left action of 1 is not the identity");
    if (!(right_action(a.unit) == id)) report.push_back("right action of 1 is not the identity");
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            Matrix lexp(dim, dim, a.field), rexp(dim, dim, a.field);
            for (int k = 0; k < a.dim; ++k) {
                Scalar c = a.mult.at(k, i * a.dim + j);
                if (!c.is_zero()) {
                    lexp = lexp + left[k] * c;
                    rexp = rexp + right[k] * c;
                }
            }
            if (!(left[i] * left[j] == lexp))
                report.push_back("left action is not multiplicative at (" + std::to_string(i) +
                                 "," + std::to_string(j) + ")");
            if (!(right[j] * right[i] == rexp))
                report.push_back("right action is not anti-multiplicative at (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
            if (!(left[i] * right[j] == right[j] * left[i]))
                report.push_back("left and right actions do not commute at (" + std::to_string(i) +
                                 "," + std::to_string(j) + ")");
        }
    return report;
}

Matrix Bimodule::left_action(const Vec& z) const {
    Matrix out(dim, dim, algebra->field);
    for (size_t i = 0; i < z.size(); ++i)
        if (!z[i].is_zero()) out = out + left[i] * z[i];
    return out;
}

Matrix Bimodule::right_action(const Vec& z) const {
    Matrix out(dim, dim, algebra->field);
    for (size_t i = 0; i < z.size(); ++i)
        if (!z[i].is_zero()) out = out + right[i] * z[i];
    return out;
}

BimodulePtr make_bimodule(Bimodule m) {
    auto report = m.validate();
    if (!report.empty()) {
        std::string msg = "invalid bimodule:";
        for (const auto& r : report) msg += "\n  " + r;
        throw ValidationError(msg);
    }
    return std::make_shared<const Bimodule>(std::move(m));
}

bool BimoduleMap::is_equivariant() const { return validate().empty(); }

std::vector<std::string> BimoduleMap::validate() const {
    std::vector<std::string> report;
    const Algebra& a = *source->algebra;
    if (matrix.rows() != target->dim || matrix.cols() != source->dim) {
        report.push_back("matrix shape mismatch");
        return report;
    }
    for (int i = 0; i < a.dim; ++i) {
        if (!(matrix * source->left[i] == target->left[i] * matrix))
            report.push_back("not left-equivariant at e_" + std::to_string(i));
        if (!(matrix * source->right[i] == target->right[i] * matrix))
            report.push_back("not right-equivariant at e_" + std::to_string(i));
    }
    return report;
}

BimodulePtr regular_bimodule(const AlgebraPtr& a) {
    Bimodule m;
    m.algebra = a;
    m.dim = a->dim;
    m.left = a->left_mult;
    m.right = a->right_mult;
    return make_bimodule(std::move(m));
}

BimodulePtr outer_tensor_bimodule(const AlgebraPtr& a) {
    Bimodule m;
    m.algebra = a;
    m.dim = a->dim * a->dim;
    Matrix id = Matrix::identity(a->dim, a->field);
    for (int i = 0; i < a->dim; ++i) {
        m.left.push_back(Matrix::kron(a->left_mult[i], id));
        m.right.push_back(Matrix::kron(id, a->right_mult[i]));
    }
    return make_bimodule(std::move(m));
}

BimodulePtr twisted_bimodule(const AlgebraPtr& a, const Matrix& endo) {
    HL_CHECK(endo.rows() == a->dim && endo.cols() == a->dim, "endomorphism shape mismatch");
    // endo must be an algebra map: endo(1) = 1 and endo(xy) = endo(x)endo(y)
    if (!(endo.apply(a->unit) == a->unit)) throw ValidationError("twist does not fix the unit");
    for (int i = 0; i < a->dim; ++i)
        for (int j = 0; j < a->dim; ++j) {
            Vec lhs = endo.apply(a->multiply(unit_vec(a->dim, i, a->field),
                                             unit_vec(a->dim, j, a->field)));
            Vec rhs = a->multiply(endo.column(i), endo.column(j));
            if (!(lhs == rhs))
                throw ValidationError("twist is not multiplicative at (" + std::to_string(i) +
                                      "," + std::to_string(j) + ")");
        }
    Bimodule m;
    m.algebra = a;
    m.dim = a->dim;
    m.left = a->left_mult;
    for (int i = 0; i < a->dim; ++i) m.right.push_back(a->right_action(endo.column(i)));
    return make_bimodule(std::move(m));
}

BimodulePtr direct_sum_bimodule(const BimodulePtr& m, const BimodulePtr& n) {
    HL_CHECK(m->algebra == n->algebra || m->algebra->table == n->algebra->table,
             "direct sum over different algebras");
    Bimodule s;
    s.algebra = m->algebra;
    s.dim = m->dim + n->dim;
    for (int i = 0; i < m->algebra->dim; ++i) {
        s.left.push_back(Matrix::diag({m->left[i], n->left[i]}));
        s.right.push_back(Matrix::diag({m->right[i], n->right[i]}));
    }
    return make_bimodule(std::move(s));
}

BimodulePtr sub_bimodule(const BimodulePtr& parent, const Subspace& s) {
    HL_CHECK(s.ambient_dim() == parent->dim, "subspace ambient mismatch");
    Bimodule sub;
    sub.algebra = parent->algebra;
    sub.dim = s.dim();
    for (int i = 0; i < parent->algebra->dim; ++i) {
        auto l = s.basis().solve_matrix(parent->left[i] * s.basis());
        auto r = s.basis().solve_matrix(parent->right[i] * s.basis());
        if (!l || !r) throw ValidationError("subspace is not action-stable");
        sub.left.push_back(*l);
        sub.right.push_back(*r);
    }
    return make_bimodule(std::move(sub));
}

QuotientBimodule quotient_bimodule(const BimodulePtr& parent, const Subspace& relations) {
    QuotientSpace q = QuotientSpace::make(parent->dim, relations);
    Bimodule quo;
    quo.algebra = parent->algebra;
    quo.dim = q.dim();
    for (int i = 0; i < parent->algebra->dim; ++i) {
        // stability of the relations under both actions
        if (!relations.contains(Subspace::span(parent->left[i] * relations.basis())) ||
            !relations.contains(Subspace::span(parent->right[i] * relations.basis())))
            throw ValidationError("relations are not action-stable");
        quo.left.push_back(q.induce_from(q.projection() * parent->left[i]));
        quo.right.push_back(q.induce_from(q.projection() * parent->right[i]));
    }
    return {make_bimodule(std::move(quo)), std::move(q)};
}

Subspace center(const Algebra& a) {
    // z central iff (L_i - R_i) z = 0 for all i
    std::vector<Matrix> comms;
    for (int i = 0; i < a.dim; ++i) comms.push_back(a.left_mult[i] - a.right_mult[i]);
    return Subspace::span(Matrix::vstack(comms).kernel_basis_matrix());
}

Subspace relative_center(const Algebra& a, const Bimodule& m) {
    Subspace z = center(a);
    // z -> (L(z) - R(z)) as a linear map K^dimA -> End(M), restricted to Z(A)
    Matrix act(m.dim * m.dim, a.dim, a.field);
    for (int j = 0; j < a.dim; ++j) {
        Matrix d = m.left[j] - m.right[j];
        d.for_each_nonzero([&](int r, int c, const Scalar& v) { act.set(c * m.dim + r, j, v); });
    }
    Matrix on_z = act * z.basis();
    Matrix ker = on_z.kernel_basis_matrix();
    return Subspace::span(z.basis() * ker);
}

Subspace invariants_submodule(const Algebra& a, const Bimodule& m) {
    std::vector<Matrix> rows;
    for (int i = 0; i < a.dim; ++i) rows.push_back(m.left[i] - m.right[i]);
    return Subspace::span(Matrix::vstack(rows).kernel_basis_matrix());
}

Matrix derivation_to_matrix(const Algebra& a, const Bimodule& m, const Vec& flat) {
    HL_CHECK(static_cast<int>(flat.size()) == a.dim * m.dim, "flat derivation length mismatch");
    Matrix d(m.dim, a.dim, a.field);
    for (int j = 0; j < a.dim; ++j)
        for (int r = 0; r < m.dim; ++r) d.set(r, j, flat[j * m.dim + r]);
    return d;
}

Vec matrix_to_derivation_vec(const Matrix& d) {
    Vec flat = zero_vec(d.rows() * d.cols(), d.field());
    d.for_each_nonzero([&](int r, int c, const Scalar& v) { flat[c * d.rows() + r] = v; });
    return flat;
}

DerivationSpaces derivation_space(const Algebra& a, const Bimodule& m) {
    const FieldSpec& f = a.field;
    int nvars = a.dim * m.dim;
    // Leibniz system: D(e_i e_j) - e_i D(e_j) - D(e_i) e_j = 0, one block of
    // m.dim equations per pair (i,j)
    Matrix sys(a.dim * a.dim * m.dim, nvars, f);
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            int row0 = (i * a.dim + j) * m.dim;
            for (int k = 0; k < a.dim; ++k) {
                Scalar c = a.mult.at(k, i * a.dim + j);
                if (c.is_zero()) continue;
                for (int r = 0; r < m.dim; ++r) sys.add_at(row0 + r, k * m.dim + r, c);
            }
            m.left[i].for_each_nonzero([&](int r, int c, const Scalar& v) {
                sys.add_at(row0 + r, j * m.dim + c, -v);
            });
            m.right[j].for_each_nonzero([&](int r, int c, const Scalar& v) {
                sys.add_at(row0 + r, i * m.dim + c, -v);
            });
        }
    Subspace der = Subspace::span(sys.kernel_basis_matrix());
    Matrix inn(nvars, m.dim, f);
    for (int v = 0; v < m.dim; ++v) {
        Matrix d = inner_derivation(a, m, unit_vec(m.dim, v, f));
        Vec flat = matrix_to_derivation_vec(d);
        for (int r = 0; r < nvars; ++r) inn.set(r, v, flat[r]);
    }
    return {der, Subspace::span(inn)};
}

Matrix inner_derivation(const Algebra& a, const Bimodule& m, const Vec& v) {
    Matrix d(m.dim, a.dim, a.field);
    for (int j = 0; j < a.dim; ++j) {
        Vec col = sub(m.left[j].apply(v), m.right[j].apply(v));
        for (int r = 0; r < m.dim; ++r) d.set(r, j, col[r]);
    }
    return d;
}

bool is_derivation(const Algebra& a, const Bimodule& m, const Matrix& d) {
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            Vec prod = zero_vec(m.dim, a.field);
            for (int k = 0; k < a.dim; ++k) {
                Scalar c = a.mult.at(k, i * a.dim + j);
                if (!c.is_zero()) prod = add(prod, scale(c, d.column(k)));
            }
            Vec rhs = add(m.left[i].apply(d.column(j)), m.right[j].apply(d.column(i)));
            if (!(prod == rhs)) return false;
        }
    return true;
}

TensorOverA tensor_over_A(const BimodulePtr& m, const BimodulePtr& n) {
    HL_CHECK(m->algebra->table == n->algebra->table && m->algebra->field == n->algebra->field,
             "tensor over different algebras");
    const Algebra& a = *m->algebra;
    Matrix idm = Matrix::identity(m->dim, a.field);
    Matrix idn = Matrix::identity(n->dim, a.field);
    std::vector<Matrix> rels;
    for (int i = 0; i < a.dim; ++i)
        rels.push_back(Matrix::kron(m->right[i], idn) - Matrix::kron(idm, n->left[i]));
    Subspace relations = Subspace::span(Matrix::hstack(rels));
    // outer actions descend to the quotient
    Bimodule big;
    big.algebra = m->algebra;
    big.dim = m->dim * n->dim;
    for (int i = 0; i < a.dim; ++i) {
        big.left.push_back(Matrix::kron(m->left[i], idn));
        big.right.push_back(Matrix::kron(idm, n->right[i]));
    }
    auto quo = quotient_bimodule(std::make_shared<const Bimodule>(std::move(big)), relations);
    return {quo.module, quo.space.projection(), quo.space.section()};
}

Matrix lambda_unit_iso(const TensorOverA& t, const Bimodule& m) {
    // A (x)_A M -> M, a (x) v -> a.v
    const Algebra& a = *m.algebra;
    Matrix u(m.dim, a.dim * m.dim, a.field);
    for (int i = 0; i < a.dim; ++i)
        m.left[i].for_each_nonzero(
            [&](int r, int c, const Scalar& v) { u.set(r, i * m.dim + c, v); });
    return u * t.section;
}

Matrix rho_unit_iso(const TensorOverA& t, const Bimodule& m) {
    // M (x)_A A -> M, v (x) a -> v.a
    const Algebra& a = *m.algebra;
    Matrix u(m.dim, m.dim * a.dim, a.field);
    for (int j = 0; j < a.dim; ++j)
        m.right[j].for_each_nonzero(
            [&](int r, int c, const Scalar& v) { u.set(r, c * a.dim + j, v); });
    return u * t.section;
}

AlgebraPtr matrix_algebra(const AlgebraPtr& a, int k) {
    HL_CHECK(k >= 1, "matrix algebra size must be positive");
    Algebra b;
    b.field = a->field;
    b.dim = k * k * a->dim;
    auto idx = [&](int s, int t, int i) { return (s * k + t) * a->dim + i; };
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t)
            for (int i = 0; i < a->dim; ++i)
                b.basis_names.push_back("E" + std::to_string(s) + std::to_string(t) + "*" +
                                        a->basis_names[i]);
    b.unit = zero_vec(b.dim, b.field);
    for (int s = 0; s < k; ++s)
        for (int i = 0; i < a->dim; ++i)
            if (!a->unit[i].is_zero()) b.unit[idx(s, s, i)] = a->unit[i];
    // (E_{st} e_i)(E_{uv} e_j) = delta_{tu} E_{sv} (e_i e_j)
    for (int s = 0; s < k; ++s)
        for (int t = 0; t < k; ++t)
            for (int v = 0; v < k; ++v)
                for (const auto& [i, j, kk, c] : a->table)
                    b.table.emplace_back(idx(s, t, i), idx(t, v, j), idx(s, v, kk), c);
    return make_algebra(std::move(b));
}

AlgebraPtr subalgebra(const AlgebraPtr& a, const Subspace& s, const std::vector<std::string>& names) {
    Algebra b;
    b.field = a->field;
    b.dim = s.dim();
    if (!names.empty()) b.basis_names = names;
    auto unit_coords = s.coordinates(a->unit);
    if (!unit_coords) throw ValidationError("subspace does not contain the unit");
    b.unit = *unit_coords;
    for (int i = 0; i < b.dim; ++i)
        for (int j = 0; j < b.dim; ++j) {
            Vec prod = a->multiply(s.basis().column(i), s.basis().column(j));
            auto coords = s.coordinates(prod);
            if (!coords) throw ValidationError("subspace is not multiplicatively closed");
            for (int kk = 0; kk < b.dim; ++kk)
                if (!(*coords)[kk].is_zero()) b.table.emplace_back(i, j, kk, (*coords)[kk]);
        }
    return make_algebra(std::move(b));
}

}  // namespace hochlab
