#include "hochlab/extension.hpp"

#include "hochlab/bar.hpp"

namespace hochlab {

const Bimodule& NExtension::term(int k) const {
    int n = length();
    HL_CHECK(k >= -1 && k <= n, "extension term index out of range");
    if (k == -1) return *right;
    if (k == n) return *left;
    return *mids[k];
}

std::vector<std::string> NExtension::validate() const {
    std::vector<std::string> report;
    int n = length();
    if (n < 1) {
        report.push_back("extension length must be at least 1");
        return report;
    }
    if (static_cast<int>(maps.size()) != n + 1) {
        report.push_back("map count must be length+1");
        return report;
    }
    if (!is_regular_module(*right)) report.push_back("right end is not the regular bimodule");
    const Algebra& a = *right->algebra;
    for (int k = 0; k <= n; ++k) {
        const Bimodule& src = term(k);
        const Bimodule& tgt = term(k - 1);
        if (maps[k].rows() != tgt.dim || maps[k].cols() != src.dim) {
            report.push_back("map d_" + std::to_string(k) + " has wrong shape");
            return report;
        }
        for (int i = 0; i < a.dim; ++i) {
            if (!(maps[k] * src.left[i] == tgt.left[i] * maps[k]) ||
                !(maps[k] * src.right[i] == tgt.right[i] * maps[k])) {
                report.push_back("d_" + std::to_string(k) + " is not a bimodule map");
                break;
            }
        }
    }
    for (int k = 1; k <= n; ++k)
        if (!(maps[k - 1] * maps[k]).is_zero())
            report.push_back("d_" + std::to_string(k - 1) + " o d_" + std::to_string(k) +
                             " is not zero");
    if (maps[0].rank() != right->dim) report.push_back("position 0: d_0 is not surjective");
    if (maps[n].rank() != left->dim)
        report.push_back("d_" + std::to_string(n) + " is not injective");
    // exactness at the middle terms: rank d_{k+1} = dim E_k - rank d_k
    for (int k = 0; k < n; ++k)
        if (maps[k + 1].rank() != mids[k]->dim - maps[k].rank())
            report.push_back("not exact at position " + std::to_string(k));
    return report;
}

NExtension make_extension(BimodulePtr left, BimodulePtr right, std::vector<BimodulePtr> mids,
                          std::vector<Matrix> maps) {
    NExtension s{std::move(left), std::move(right), std::move(mids), std::move(maps)};
    auto report = s.validate();
    if (!report.empty()) {
        std::string msg = "invalid extension:";
        for (const auto& r : report) msg += "\n  " + r;
        throw ValidationError(msg);
    }
    return s;
}

NExtension trivial_extension(const BimodulePtr& m, int n) {
    const AlgebraPtr& a = m->algebra;
    BimodulePtr reg = regular_bimodule(a);
    const FieldSpec& f = a->field;
    if (n == 1) {
        // 0 -> M -> M + A -> A -> 0
        BimodulePtr mid = direct_sum_bimodule(m, reg);
        Matrix d1(mid->dim, m->dim, f), d0(a->dim, mid->dim, f);
        for (int i = 0; i < m->dim; ++i) d1.set(i, i, Scalar::one(f));
        for (int i = 0; i < a->dim; ++i) d0.set(i, m->dim + i, Scalar::one(f));
        return make_extension(m, reg, {mid}, {d0, d1});
    }
    // 0 -> M = M -> 0 -> ... -> 0 -> A = A -> 0
    Bimodule zero;
    zero.algebra = a;
    zero.dim = 0;
    zero.left.assign(a->dim, Matrix(0, 0, f));
    zero.right.assign(a->dim, Matrix(0, 0, f));
    BimodulePtr zp = std::make_shared<const Bimodule>(std::move(zero));
    std::vector<BimodulePtr> mids(n);
    mids[0] = reg;
    mids[n - 1] = m;
    for (int k = 1; k < n - 1; ++k) mids[k] = zp;
    std::vector<Matrix> maps;
    maps.push_back(Matrix::identity(a->dim, f));
    maps.push_back(Matrix(a->dim, mids[1]->dim, f));
    for (int k = 2; k < n; ++k) maps.push_back(Matrix(mids[k - 1]->dim, mids[k]->dim, f));
    maps.push_back(Matrix::identity(m->dim, f));
    return make_extension(m, reg, std::move(mids), std::move(maps));
}

std::vector<std::string> validate_morphism(const NExtension& s, const NExtension& t,
                                           const ExtMorphism& m) {
    std::vector<std::string> report;
    int n = s.length();
    if (t.length() != n || static_cast<int>(m.comps.size()) != n) {
        report.push_back("shape mismatch");
        return report;
    }
    const Algebra& a = *s.right->algebra;
    for (int k = 0; k < n; ++k) {
        const Bimodule& src = *s.mids[k];
        const Bimodule& tgt = *t.mids[k];
        for (int i = 0; i < a.dim; ++i)
            if (!(m.comps[k] * src.left[i] == tgt.left[i] * m.comps[k]) ||
                !(m.comps[k] * src.right[i] == tgt.right[i] * m.comps[k])) {
                report.push_back("component " + std::to_string(k) + " is not a bimodule map");
                break;
            }
    }
    if (!(m.comps[n - 1] * s.d(n) == t.d(n))) report.push_back("left end square fails");
    if (!(t.d(0) * m.comps[0] == s.d(0))) report.push_back("right end square fails");
    for (int k = 1; k < n; ++k)
        if (!(t.d(k) * m.comps[k] == m.comps[k - 1] * s.d(k)))
            report.push_back("square at position " + std::to_string(k) + " fails");
    return report;
}

bool LoopPair::is_trivial() const {
    for (size_t k = 0; k < f_lambda.comps.size(); ++k)
        if (!(f_lambda.comps[k] == f_rho.comps[k])) return false;
    return true;
}

Matrix defect(const Algebra& a, const Vec& z, const Bimodule& m) {
    if (!center(a).contains(z)) throw ValidationError("defect: element is not central");
    return m.left_action(z) - m.right_action(z);
}

namespace {

void require_relative_central(const NExtension& s, const Vec& z) {
    const Algebra& a = *s.right->algebra;
    if (!relative_center(a, *s.left).contains(z))
        throw ValidationError("element is not in the M-relative center");
}

// S # f with the pushout presentation of the new top term kept around
struct SpliceRightDetail {
    NExtension ext;
    QuotientSpace space;  // of M + E_{n-1}
};

SpliceRightDetail splice_right_detail(const NExtension& s, const Vec& z) {
    int n = s.length();
    const FieldSpec& f = s.right->algebra->field;
    const Bimodule& m = *s.left;
    const Bimodule& e = *s.mids[n - 1];
    // pushout (M + E_{n-1}) / {(z.m, -d_n(m))}
    Matrix rel = Matrix::vstack({m.left_action(z), -s.d(n)});
    auto quo = quotient_bimodule(direct_sum_bimodule(s.left, s.mids[n - 1]), Subspace::span(rel));
    Matrix incl(m.dim + e.dim, m.dim, f);
    for (int i = 0; i < m.dim; ++i) incl.set(i, i, Scalar::one(f));
    Matrix new_dn = quo.space.projection() * incl;
    // [(m, e)] -> d_{n-1}(e)
    Matrix down(s.d(n - 1).rows(), m.dim + e.dim, f);
    s.d(n - 1).for_each_nonzero([&](int r, int c, const Scalar& v) { down.set(r, m.dim + c, v); });
    Matrix new_dn1 = quo.space.induce_from(down);
    std::vector<BimodulePtr> mids = s.mids;
    mids[n - 1] = quo.module;
    std::vector<Matrix> maps = s.maps;
    maps[n] = new_dn;
    maps[n - 1] = new_dn1;
    return {make_extension(s.left, s.right, std::move(mids), std::move(maps)),
            std::move(quo.space)};
}

// f # S with the pullback inclusion kept around
struct SpliceLeftDetail {
    NExtension ext;
    Matrix kappa;  // inclusion of the new E_0 into A + E_0
};

SpliceLeftDetail splice_left_detail(const Vec& z, const NExtension& s) {
    const Algebra& a = *s.right->algebra;
    const FieldSpec& f = a.field;
    const Bimodule& e0 = *s.mids[0];
    // pullback {(x, e) in A + E_0 : z x = d_0(e)} = Ker[mult_z | -d_0]
    Matrix graph = Matrix::hstack({a.left_action(z), -s.d(0)});
    Subspace q = Subspace::span(graph.kernel_basis_matrix());
    auto qmod = sub_bimodule(direct_sum_bimodule(regular_bimodule(s.right->algebra), s.mids[0]), q);
    Matrix kappa = q.basis();
    Matrix pr(a.dim, a.dim + e0.dim, f);
    for (int i = 0; i < a.dim; ++i) pr.set(i, i, Scalar::one(f));
    Matrix new_d0 = pr * kappa;
    // incoming map lands in {0} + im(d_1)
    Matrix into = Matrix::vstack({Matrix(a.dim, s.d(1).cols(), f), s.d(1)});
    auto new_d1 = kappa.solve_matrix(into);
    HL_CHECK(new_d1.has_value(), "pullback does not receive the differential");
    std::vector<BimodulePtr> mids = s.mids;
    mids[0] = qmod;
    std::vector<Matrix> maps = s.maps;
    maps[0] = new_d0;
    maps[1] = *new_d1;
    return {make_extension(s.left, s.right, std::move(mids), std::move(maps)), std::move(kappa)};
}

}  // namespace

NExtension splice_right(const NExtension& s, const Vec& z) {
    require_relative_central(s, z);
    return splice_right_detail(s, z).ext;
}

NExtension splice_left(const Vec& z, const NExtension& s) {
    require_relative_central(s, z);
    return splice_left_detail(z, s).ext;
}

LoopPair loop(const NExtension& s, const Vec& z) {
    require_relative_central(s, z);
    int n = s.length();
    const Algebra& a = *s.right->algebra;
    const FieldSpec& f = a.field;
    const Bimodule& m = *s.left;
    auto sr = splice_right_detail(s, z);
    auto sl = splice_left_detail(z, s);
    LoopPair lp;
    lp.source = std::move(sr.ext);
    lp.target = std::move(sl.ext);
    lp.f_lambda.comps.assign(n, Matrix());
    lp.f_rho.comps.assign(n, Matrix());
    if (n == 1) {
        const Bimodule& e = *s.mids[0];
        // zeta(m,e) = (d_0(e), act(e) + d_1(m)) with act = z.(-) resp. (-).z
        auto component = [&](const Matrix& act) {
            Matrix zeta(a.dim + e.dim, m.dim + e.dim, f);
            s.d(0).for_each_nonzero(
                [&](int r, int c, const Scalar& v) { zeta.set(r, m.dim + c, v); });
            act.for_each_nonzero(
                [&](int r, int c, const Scalar& v) { zeta.set(a.dim + r, m.dim + c, v); });
            s.d(1).for_each_nonzero(
                [&](int r, int c, const Scalar& v) { zeta.set(a.dim + r, c, v); });
            Matrix descended = sr.space.induce_from(zeta);
            auto sol = sl.kappa.solve_matrix(descended);
            HL_CHECK(sol.has_value(), "zeta does not land in the pullback");
            return *sol;
        };
        lp.f_lambda.comps[0] = component(e.left_action(z));
        lp.f_rho.comps[0] = component(e.right_action(z));
    } else {
        const Bimodule& etop = *s.mids[n - 1];
        const Bimodule& e0 = *s.mids[0];
        // top component [(m,e)] -> act(e) + d_n(m)
        auto top = [&](const Matrix& act) {
            Matrix zeta(etop.dim, m.dim + etop.dim, f);
            act.for_each_nonzero(
                [&](int r, int c, const Scalar& v) { zeta.set(r, m.dim + c, v); });
            s.d(n).for_each_nonzero([&](int r, int c, const Scalar& v) { zeta.set(r, c, v); });
            return sr.space.induce_from(zeta);
        };
        // bottom component e -> (d_0(e), act(e))
        auto bottom = [&](const Matrix& act) {
            Matrix zeta = Matrix::vstack({s.d(0), act});
            auto sol = sl.kappa.solve_matrix(zeta);
            HL_CHECK(sol.has_value(), "zeta does not land in the pullback");
            return *sol;
        };
        lp.f_lambda.comps[n - 1] = top(etop.left_action(z));
        lp.f_rho.comps[n - 1] = top(etop.right_action(z));
        lp.f_lambda.comps[0] = bottom(e0.left_action(z));
        lp.f_rho.comps[0] = bottom(e0.right_action(z));
        for (int k = 1; k <= n - 2; ++k) {
            lp.f_lambda.comps[k] = s.mids[k]->left_action(z);
            lp.f_rho.comps[k] = s.mids[k]->right_action(z);
        }
    }
    HL_CHECK(validate_morphism(lp.source, lp.target, lp.f_lambda).empty() &&
                 validate_morphism(lp.source, lp.target, lp.f_rho).empty(),
             "loop morphisms fail to commute");
    return lp;
}

Cochain ext_bracket(const NExtension& s, const Vec& z, const BarResolution& bar,
                    PivotOrder order) {
    require_relative_central(s, z);
    int n = s.length();
    HL_CHECK(bar.max_degree >= n, "bar resolution too short for ext_bracket");
    LoopPair lp = loop(s, z);
    ChainMap phi = lift_identity(bar, lp.source, order);
    // difference of the loop morphisms composed with the lift; zero on M
    std::vector<Matrix> h;
    for (int k = 0; k < n; ++k)
        h.push_back((lp.f_lambda.comps[k] - lp.f_rho.comps[k]) * phi.comps[k]);
    h.push_back(Matrix(s.left->dim, bar.terms[n]->dim, s.left->algebra->field));
    Homotopy hom = null_homotopy(bar, lp.target, h, order);
    Cochain out = adjoint_cochain(bar, n - 1, s.left, hom.comps[n - 1]);
    HL_CHECK(differential(out).is_zero(), "ext_bracket produced a non-cocycle");
    return out;
}

NExtension baer_sum(const NExtension& s, const NExtension& t) {
    int n = s.length();
    HL_CHECK(t.length() == n, "Baer sum of different lengths");
    const Algebra& a = *s.right->algebra;
    const FieldSpec& f = a.field;
    const Bimodule& m = *s.left;
    HL_CHECK(t.left->dim == m.dim, "Baer sum with different left ends");
    for (int i = 0; i < a.dim; ++i)
        HL_CHECK(t.left->left[i] == m.left[i] && t.left->right[i] == m.right[i],
                 "Baer sum with different left ends");

    // pullback along the diagonal at degree 0: {(e,e') : d_0 e = d_0' e'}
    Matrix graph = Matrix::hstack({s.d(0), -t.d(0)});
    Subspace x = Subspace::span(graph.kernel_basis_matrix());
    auto xmod = sub_bimodule(direct_sum_bimodule(s.mids[0], t.mids[0]), x);
    Matrix kappa = x.basis();
    Matrix d0pair(a.dim, s.mids[0]->dim + t.mids[0]->dim, f);
    s.d(0).for_each_nonzero([&](int r, int c, const Scalar& v) { d0pair.set(r, c, v); });
    Matrix d0x = d0pair * kappa;
    auto into = kappa.solve_matrix(Matrix::diag({s.d(1), t.d(1)}));
    HL_CHECK(into.has_value(), "sum differential misses the pullback");

    // codiagonal pushout data at degree n-1
    Matrix nabla = Matrix::hstack({Matrix::identity(m.dim, f), Matrix::identity(m.dim, f)});
    Matrix rel = Matrix::vstack({nabla, -Matrix::diag({s.d(n), t.d(n)})});

    if (n == 1) {
        // both operations happen at the single middle term: push out the
        // pullback along the codiagonal of M + M
        auto jj = kappa.solve_matrix(Matrix::diag({s.d(1), t.d(1)}));
        HL_CHECK(jj.has_value(), "diagonal inclusion misses the pullback");
        Matrix rel1 = Matrix::vstack({nabla, -*jj});
        auto quo = quotient_bimodule(direct_sum_bimodule(s.left, xmod), Subspace::span(rel1));
        Matrix incl(m.dim + xmod->dim, m.dim, f);
        for (int i = 0; i < m.dim; ++i) incl.set(i, i, Scalar::one(f));
        Matrix d1 = quo.space.projection() * incl;
        Matrix down(a.dim, m.dim + xmod->dim, f);
        d0x.for_each_nonzero([&](int r, int c, const Scalar& v) { down.set(r, m.dim + c, v); });
        Matrix d0 = quo.space.induce_from(down);
        return make_extension(s.left, s.right, {quo.module}, {d0, d1});
    }

    std::vector<BimodulePtr> mids(n);
    std::vector<Matrix> maps(n + 1);
    mids[0] = xmod;
    maps[0] = d0x;
    maps[1] = *into;
    for (int k = 1; k <= n - 2; ++k) mids[k] = direct_sum_bimodule(s.mids[k], t.mids[k]);
    for (int k = 2; k <= n - 2; ++k) maps[k] = Matrix::diag({s.d(k), t.d(k)});

    auto sum_top = direct_sum_bimodule(s.mids[n - 1], t.mids[n - 1]);
    auto quo = quotient_bimodule(direct_sum_bimodule(s.left, sum_top), Subspace::span(rel));
    mids[n - 1] = quo.module;
    Matrix incl(m.dim + sum_top->dim, m.dim, f);
    for (int i = 0; i < m.dim; ++i) incl.set(i, i, Scalar::one(f));
    maps[n] = quo.space.projection() * incl;
    // [(m, (e,e'))] -> (d_{n-1} e, d'_{n-1} e'), in pullback coordinates when n = 2
    Matrix dsum = n == 2 ? *into : Matrix::diag({s.d(n - 1), t.d(n - 1)});
    Matrix down(dsum.rows(), m.dim + sum_top->dim, f);
    dsum.for_each_nonzero([&](int r, int c, const Scalar& v) { down.set(r, m.dim + c, v); });
    maps[n - 1] = quo.space.induce_from(down);
    return make_extension(s.left, s.right, std::move(mids), std::move(maps));
}

std::optional<ExtMorphism> connect_extensions(const NExtension& s, const NExtension& t) {
    int n = s.length();
    if (t.length() != n || s.left->dim != t.left->dim) return std::nullopt;
    const Algebra& a = *s.right->algebra;
    const FieldSpec& f = a.field;
    LinearSystem sys(f);
    std::vector<int> offset(n);
    for (int k = 0; k < n; ++k) offset[k] = sys.add_vars(t.mids[k]->dim * s.mids[k]->dim);
    auto var = [&](int k, int r, int c) { return offset[k] + c * t.mids[k]->dim + r; };

    // equation grid for P * X_k + cst, returns the row indices
    auto grid = [&](int rows, int cols) {
        std::vector<std::vector<int>> rowidx(rows, std::vector<int>(cols));
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) rowidx[i][j] = sys.add_row();
        return rowidx;
    };
    auto add_left_mul = [&](const std::vector<std::vector<int>>& rowidx, int k, const Matrix& p,
                            const Scalar& sign) {
        p.for_each_nonzero([&](int i, int r, const Scalar& v) {
            for (size_t j = 0; j < rowidx[0].size(); ++j)
                sys.add_coeff(rowidx[i][j], var(k, r, static_cast<int>(j)), v * sign);
        });
    };
    auto add_right_mul = [&](const std::vector<std::vector<int>>& rowidx, int k, const Matrix& q,
                             const Scalar& sign) {
        q.for_each_nonzero([&](int c, int j, const Scalar& v) {
            for (size_t i = 0; i < rowidx.size(); ++i)
                sys.add_coeff(rowidx[i][j], var(k, static_cast<int>(i), c), v * sign);
        });
    };
    auto set_rhs = [&](const std::vector<std::vector<int>>& rowidx, const Matrix& cst) {
        cst.for_each_nonzero([&](int i, int j, const Scalar& v) { sys.set_rhs(rowidx[i][j], v); });
    };

    const Scalar one = Scalar::one(f);
    {  // right end: t.d(0) X_0 = s.d(0)
        auto g = grid(a.dim, s.mids[0]->dim);
        add_left_mul(g, 0, t.d(0), one);
        set_rhs(g, s.d(0));
    }
    {  // left end: X_{n-1} s.d(n) = t.d(n)
        auto g = grid(t.mids[n - 1]->dim, s.left->dim);
        add_right_mul(g, n - 1, s.d(n), one);
        set_rhs(g, t.d(n));
    }
    for (int k = 1; k < n; ++k) {  // t.d(k) X_k - X_{k-1} s.d(k) = 0
        auto g = grid(t.mids[k - 1]->dim, s.mids[k]->dim);
        add_left_mul(g, k, t.d(k), one);
        add_right_mul(g, k - 1, s.d(k), -one);
    }
    for (int k = 0; k < n; ++k)  // equivariance of each component
        for (int i = 0; i < a.dim; ++i) {
            auto g1 = grid(t.mids[k]->dim, s.mids[k]->dim);
            add_right_mul(g1, k, s.mids[k]->left[i], one);
            add_left_mul(g1, k, t.mids[k]->left[i], -one);
            auto g2 = grid(t.mids[k]->dim, s.mids[k]->dim);
            add_right_mul(g2, k, s.mids[k]->right[i], one);
            add_left_mul(g2, k, t.mids[k]->right[i], -one);
        }

    auto sol = sys.solve();
    if (!sol) return std::nullopt;
    ExtMorphism m;
    for (int k = 0; k < n; ++k) {
        Matrix comp(t.mids[k]->dim, s.mids[k]->dim, f);
        for (int r = 0; r < comp.rows(); ++r)
            for (int c = 0; c < comp.cols(); ++c) comp.set(r, c, (*sol)[var(k, r, c)]);
        m.comps.push_back(std::move(comp));
    }
    HL_CHECK(validate_morphism(s, t, m).empty(), "connector solve produced a non-morphism");
    return m;
}

}  // namespace hochlab
