#include "hochlab/cochain.hpp"

namespace hochlab {

long tensor_power(int base, int exp, long budget) {
    long v = 1;
    for (int i = 0; i < exp; ++i) {
        v *= base;
        if (budget > 0 && v > budget)
            throw BudgetError("tensor power " + std::to_string(base) + "^" + std::to_string(exp) +
                              " exceeds the scalar budget");
        HL_CHECK(v > 0, "tensor power overflow");
    }
    return v;
}

namespace {

// parity of a*b, safe for negative exponents like (i-1)(n-1) at n = 0
bool odd_product(long a, long b) { return (a & 1) != 0 && (b & 1) != 0; }

// decode tuple index (i_1 most significant) into digits
std::vector<int> decode(long t, int d, int n) {
    std::vector<int> digits(n);
    for (int k = n - 1; k >= 0; --k) {
        digits[k] = static_cast<int>(t % d);
        t /= d;
    }
    return digits;
}

long encode(const std::vector<int>& digits, int d) {
    long t = 0;
    for (int x : digits) t = t * d + x;
    return t;
}

}  // namespace

Cochain Cochain::zero(const BimodulePtr& m, int degree) {
    HL_CHECK(degree >= -1, "cochain degree below -1");
    long cols = degree < 0 ? 0 : tensor_power(m->algebra->dim, degree);
    return Cochain{degree, m, Matrix(m->dim, static_cast<int>(cols), m->algebra->field)};
}

Cochain Cochain::constant(const BimodulePtr& m, const Vec& value) {
    Cochain c = zero(m, 0);
    for (int r = 0; r < m->dim; ++r) c.matrix.set(r, 0, value[r]);
    return c;
}

Vec Cochain::flat() const {
    Vec v = zero_vec(matrix.rows() * matrix.cols(), matrix.field());
    matrix.for_each_nonzero(
        [&](int r, int c, const Scalar& s) { v[static_cast<size_t>(c) * matrix.rows() + r] = s; });
    return v;
}

Cochain Cochain::from_flat(const BimodulePtr& m, int degree, const Vec& v) {
    Cochain c = zero(m, degree);
    HL_CHECK(static_cast<long>(v.size()) ==
                 static_cast<long>(c.matrix.rows()) * c.matrix.cols(),
             "flat cochain length mismatch");
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            c.matrix.set(static_cast<int>(i % m->dim), static_cast<int>(i / m->dim), v[i]);
    return c;
}

Cochain Cochain::operator+(const Cochain& o) const {
    HL_CHECK(degree == o.degree, "cochain degree mismatch");
    return Cochain{degree, module, matrix + o.matrix};
}

Cochain Cochain::operator-(const Cochain& o) const {
    HL_CHECK(degree == o.degree, "cochain degree mismatch");
    return Cochain{degree, module, matrix - o.matrix};
}

Cochain Cochain::operator*(const Scalar& s) const { return Cochain{degree, module, matrix * s}; }
Cochain Cochain::operator-() const { return Cochain{degree, module, -matrix}; }

bool is_regular_module(const Bimodule& m) {
    const Algebra& a = *m.algebra;
    if (m.dim != a.dim) return false;
    for (int i = 0; i < a.dim; ++i)
        if (!(m.left[i] == a.left_mult[i]) || !(m.right[i] == a.right_mult[i])) return false;
    return true;
}

Cochain differential(const Cochain& f) {
    const Bimodule& m = *f.module;
    const Algebra& a = *m.algebra;
    if (f.degree < 0) return Cochain::zero(f.module, 0);
    int n = f.degree;
    int d = a.dim;
    Cochain out = Cochain::zero(f.module, n + 1);
    long tcount = tensor_power(d, n + 1);
    Scalar sign_last = (n + 1) % 2 == 0 ? Scalar::one(a.field) : -Scalar::one(a.field);
    for (long t = 0; t < tcount; ++t) {
        auto digits = decode(t, d, n + 1);
        Vec acc = zero_vec(m.dim, a.field);
        // a_1 f(a_2 ... a_{n+1})
        {
            long tail = encode(std::vector<int>(digits.begin() + 1, digits.end()), d);
            acc = add(acc, m.left[digits[0]].apply(f.matrix.column(static_cast<int>(tail))));
        }
        // sum (-1)^i f(... a_i a_{i+1} ...)
        for (int i = 1; i <= n; ++i) {
            std::vector<int> inner(digits.begin(), digits.end());
            int x = inner[i - 1], y = inner[i];
            inner.erase(inner.begin() + i);
            Vec term = zero_vec(m.dim, a.field);
            for (int k = 0; k < d; ++k) {
                Scalar c = a.mult.at(k, x * d + y);
                if (c.is_zero()) continue;
                inner[i - 1] = k;
                term = add(term, scale(c, f.matrix.column(static_cast<int>(encode(inner, d)))));
            }
            if (i % 2 == 1)
                acc = sub(acc, term);
            else
                acc = add(acc, term);
        }
        // (-1)^{n+1} f(a_1 ... a_n) a_{n+1}
        {
            long head = encode(std::vector<int>(digits.begin(), digits.end() - 1), d);
            Vec term = m.right[digits[n]].apply(f.matrix.column(static_cast<int>(head)));
            acc = add(acc, scale(sign_last, term));
        }
        for (int r = 0; r < m.dim; ++r)
            if (!acc[r].is_zero()) out.matrix.set(r, static_cast<int>(t), acc[r]);
    }
    out.matrix.pack();
    return out;
}

Matrix differential_matrix(const BimodulePtr& mod, int n, long budget) {
    const Bimodule& m = *mod;
    const Algebra& a = *m.algebra;
    int d = a.dim;
    long tin = tensor_power(d, n, budget);
    long tout = tensor_power(d, n + 1, budget);
    if (budget > 0 && tout * m.dim > budget)
        throw BudgetError("cochain space at degree " + std::to_string(n + 1) +
                          " exceeds the scalar budget");
    Matrix dm(static_cast<int>(tout * m.dim), static_cast<int>(tin * m.dim), a.field);
    for (long t = 0; t < tout; ++t) {
        auto digits = decode(t, d, n + 1);
        long row0 = t * m.dim;
        {
            long tail = encode(std::vector<int>(digits.begin() + 1, digits.end()), d);
            m.left[digits[0]].for_each_nonzero([&](int r, int c, const Scalar& v) {
                dm.add_at(static_cast<int>(row0 + r), static_cast<int>(tail * m.dim + c), v);
            });
        }
        for (int i = 1; i <= n; ++i) {
            std::vector<int> inner(digits.begin(), digits.end());
            int x = inner[i - 1], y = inner[i];
            inner.erase(inner.begin() + i);
            Scalar sign = i % 2 == 1 ? -Scalar::one(a.field) : Scalar::one(a.field);
            for (int k = 0; k < d; ++k) {
                Scalar c = a.mult.at(k, x * d + y);
                if (c.is_zero()) continue;
                inner[i - 1] = k;
                long col0 = encode(inner, d) * m.dim;
                for (int r = 0; r < m.dim; ++r)
                    dm.add_at(static_cast<int>(row0 + r), static_cast<int>(col0 + r), sign * c);
            }
        }
        {
            long head = encode(std::vector<int>(digits.begin(), digits.end() - 1), d);
            Scalar sign = (n + 1) % 2 == 0 ? Scalar::one(a.field) : -Scalar::one(a.field);
            m.right[digits[n]].for_each_nonzero([&](int r, int c, const Scalar& v) {
                dm.add_at(static_cast<int>(row0 + r), static_cast<int>(head * m.dim + c),
                          sign * v);
            });
        }
    }
    return dm;
}

CupResult cup(const Cochain& f, const Cochain& g) {
    HL_CHECK(f.degree >= 0 && g.degree >= 0, "cup of the empty cochain");
    const Algebra& a = *f.module->algebra;
    HL_CHECK(a.table == g.module->algebra->table, "cup over different algebras");
    TensorOverA t = tensor_over_A(f.module, g.module);
    int d = a.dim;
    long tm = tensor_power(d, f.degree), tn = tensor_power(d, g.degree);
    Cochain out = Cochain::zero(t.module, f.degree + g.degree);
    for (long i = 0; i < tm; ++i) {
        Vec fv = f.matrix.column(static_cast<int>(i));
        if (is_zero_vec(fv)) continue;
        for (long j = 0; j < tn; ++j) {
            Vec gv = g.matrix.column(static_cast<int>(j));
            if (is_zero_vec(gv)) continue;
            // kron of the two value vectors, then project into M (x)_A N
            Vec big = zero_vec(f.module->dim * g.module->dim, a.field);
            for (int r = 0; r < f.module->dim; ++r)
                if (!fv[r].is_zero())
                    for (int s = 0; s < g.module->dim; ++s)
                        if (!gv[s].is_zero()) big[r * g.module->dim + s] = fv[r] * gv[s];
            Vec proj = t.projection.apply(big);
            long col = i * tn + j;
            for (int r = 0; r < t.module->dim; ++r)
                if (!proj[r].is_zero()) out.matrix.set(r, static_cast<int>(col), proj[r]);
        }
    }
    out.matrix.pack();
    return {std::move(out), std::move(t)};
}

Cochain module_cup_left(const Cochain& g, const Cochain& f) {
    HL_CHECK(is_regular_module(*g.module), "left factor must have coefficients in A");
    const Bimodule& m = *f.module;
    const Algebra& a = *m.algebra;
    int d = a.dim;
    long tn = tensor_power(d, g.degree), tm = tensor_power(d, f.degree);
    Cochain out = Cochain::zero(f.module, f.degree + g.degree);
    for (long i = 0; i < tn; ++i) {
        Vec gv = g.matrix.column(static_cast<int>(i));
        if (is_zero_vec(gv)) continue;
        Matrix act = m.left_action(gv);
        for (long j = 0; j < tm; ++j) {
            Vec v = act.apply(f.matrix.column(static_cast<int>(j)));
            long col = i * tm + j;
            for (int r = 0; r < m.dim; ++r)
                if (!v[r].is_zero()) out.matrix.set(r, static_cast<int>(col), v[r]);
        }
    }
    out.matrix.pack();
    return out;
}

Cochain module_cup_right(const Cochain& f, const Cochain& g) {
    HL_CHECK(is_regular_module(*g.module), "right factor must have coefficients in A");
    const Bimodule& m = *f.module;
    const Algebra& a = *m.algebra;
    int d = a.dim;
    long tm = tensor_power(d, f.degree), tn = tensor_power(d, g.degree);
    Cochain out = Cochain::zero(f.module, f.degree + g.degree);
    for (long j = 0; j < tn; ++j) {
        Vec gv = g.matrix.column(static_cast<int>(j));
        if (is_zero_vec(gv)) continue;
        Matrix act = m.right_action(gv);
        for (long i = 0; i < tm; ++i) {
            Vec v = act.apply(f.matrix.column(static_cast<int>(i)));
            long col = i * tn + j;
            for (int r = 0; r < m.dim; ++r)
                if (!v[r].is_zero()) out.matrix.set(r, static_cast<int>(col), v[r]);
        }
    }
    out.matrix.pack();
    return out;
}

Cochain bullet(const Cochain& f, const Cochain& g) {
    HL_CHECK(is_regular_module(*g.module), "bullet substitutes an A-valued cochain");
    HL_CHECK(f.degree >= 0 && g.degree >= 0, "bullet of the empty cochain");
    const Bimodule& mod = *f.module;
    const Algebra& a = *mod.algebra;
    int d = a.dim;
    int m = f.degree, n = g.degree;
    Cochain out = Cochain::zero(f.module, m + n - 1);
    if (m == 0) return out;  // empty alternating sum
    long tcount = tensor_power(d, m + n - 1);
    for (long t = 0; t < tcount; ++t) {
        auto digits = decode(t, d, m + n - 1);
        Vec acc = zero_vec(mod.dim, a.field);
        for (int i = 1; i <= m; ++i) {
            // substitute g(a_i ... a_{i+n-1}) into slot i of f
            std::vector<int> gslice(digits.begin() + (i - 1), digits.begin() + (i - 1) + n);
            Vec gv = g.matrix.column(static_cast<int>(encode(gslice, d)));
            if (is_zero_vec(gv)) continue;
            std::vector<int> farg(m);
            for (int k = 0; k < i - 1; ++k) farg[k] = digits[k];
            for (int k = i; k < m; ++k) farg[k] = digits[k + n - 1];
            Vec term = zero_vec(mod.dim, a.field);
            for (int k = 0; k < d; ++k) {
                if (gv[k].is_zero()) continue;
                farg[i - 1] = k;
                term = add(term, scale(gv[k], f.matrix.column(static_cast<int>(encode(farg, d)))));
            }
            bool negative = odd_product(i - 1, n - 1);
            acc = negative ? sub(acc, term) : add(acc, term);
        }
        for (int r = 0; r < mod.dim; ++r)
            if (!acc[r].is_zero()) out.matrix.set(r, static_cast<int>(t), acc[r]);
    }
    out.matrix.pack();
    return out;
}

Cochain gerstenhaber_bracket(const Cochain& f, const Cochain& g) {
    HL_CHECK(is_regular_module(*f.module) && is_regular_module(*g.module),
             "bracket requires coefficients in A");
    Cochain fg = bullet(f, g);
    Cochain gf = bullet(g, f);
    bool negative = odd_product(f.degree - 1, g.degree - 1);
    return negative ? fg + gf : fg - gf;
}

Cochain center_action(const Cochain& f, const Vec& z) {
    const Bimodule& m = *f.module;
    Subspace zm = relative_center(*m.algebra, m);
    if (!zm.contains(z))
        throw ValidationError("center_action: element is not in the M-relative center");
    if (f.degree <= 0) return Cochain::empty(f.module);
    Cochain zc = Cochain::constant(regular_bimodule(m.algebra), z);
    return bullet(f, zc);
}

Cochain fundamental_formula_residual(const Cochain& f, const Cochain& g) {
    HL_CHECK(is_regular_module(*g.module), "second argument must have coefficients in A");
    int m = f.degree, n = g.degree;
    const FieldSpec& fld = f.module->algebra->field;
    Scalar sn = n % 2 == 0 ? Scalar::one(fld) : -Scalar::one(fld);
    Scalar smn = odd_product(m, n) ? -Scalar::one(fld) : Scalar::one(fld);
    Cochain t1 = differential(bullet(f, g));
    Cochain t2 = bullet(differential(f), g) * sn;
    Cochain t3 = bullet(f, differential(g));
    Cochain t4 = (module_cup_left(g, f) - module_cup_right(f, g) * smn) * sn;
    return t1 + t2 - t3 - t4;
}

Cochain CohomologySpace::representative(int i) const {
    return Cochain::from_flat(module_, degree_, representatives_.column(i));
}

bool CohomologySpace::is_cocycle(const Cochain& c) const { return cocycles_.contains(c.flat()); }

bool CohomologySpace::is_coboundary(const Cochain& c) const {
    return coboundaries_.contains(c.flat());
}

bool CohomologySpace::same_class(const Cochain& a, const Cochain& b) const {
    return is_coboundary(a - b);
}

std::optional<Vec> CohomologySpace::class_coordinates(const Cochain& c) const {
    if (dim() == 0) return is_coboundary(c) ? std::optional<Vec>(Vec{}) : std::nullopt;
    Matrix sys = coboundaries_.dim() == 0
                     ? representatives_
                     : Matrix::hstack({representatives_, coboundaries_.basis()});
    auto x = sys.solve(c.flat());
    if (!x) return std::nullopt;
    return Vec(x->begin(), x->begin() + dim());
}

CohomologySpace cohomology(const BimodulePtr& m, int n, long budget) {
    HL_CHECK(n >= 0, "cohomology degree must be nonnegative");
    CohomologySpace h;
    h.degree_ = n;
    h.module_ = m;
    Matrix dn = differential_matrix(m, n, budget);
    h.cocycles_ = Subspace::span(dn.kernel_basis_matrix());
    if (n == 0) {
        h.coboundaries_ = Subspace(h.cocycles_.ambient_dim(), m->algebra->field);
    } else {
        Matrix dprev = differential_matrix(m, n - 1, budget);
        h.coboundaries_ = Subspace::span(dprev.column_space_matrix());
    }
    // complete the coboundary basis to a basis of the cocycles; the added
    // columns are the class representatives
    std::vector<int> chosen;
    Matrix base = h.coboundaries_.basis();
    int rank = base.cols();
    for (int j = 0; j < h.cocycles_.dim(); ++j) {
        Matrix cand = Matrix::hstack({base, h.cocycles_.basis().columns({j})});
        if (cand.rank() > rank) {
            base = cand;
            rank = cand.rank();
            chosen.push_back(j);
        }
    }
    h.representatives_ = h.cocycles_.basis().columns(chosen);
    return h;
}

}  // namespace hochlab
