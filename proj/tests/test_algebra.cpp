#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hochlab/algebra.hpp"
#include "hochlab/fixtures.hpp"

using namespace hochlab;
using namespace hochlab::fixtures;

namespace {
const FieldSpec Q = FieldSpec::rationals();
}

TEST_CASE("algebra validation") {
    CHECK(ground_field(Q)->validate().empty());
    CHECK(dual_numbers(Q)->validate().empty());

    // e1*e1 = e2, e2*e1 = e1 with unit e1: the unit axiom fails
    Algebra bad;
    bad.field = Q;
    bad.dim = 2;
    bad.unit = {Scalar::one(Q), Scalar::zero(Q)};
    bad.table = {{0, 0, 1, Scalar::one(Q)}, {1, 0, 0, Scalar::one(Q)}};
    bad.finalize();
    CHECK(!bad.validate().empty());
    CHECK_THROWS_AS(make_algebra(bad), ValidationError);
}

TEST_CASE("regular bimodule") {
    auto k = ground_field(Q);
    auto rk = regular_bimodule(k);
    CHECK(rk->left[0] == Matrix::identity(1, Q));
    CHECK(rk->right[0] == Matrix::identity(1, Q));

    auto d = dual_numbers(Q);
    auto rd = regular_bimodule(d);
    // L_x = R_x = the nilpotent shift 1 -> x -> 0
    Matrix shift(2, 2, Q);
    shift.set(1, 0, Scalar::one(Q));
    CHECK(rd->left[1] == shift);
    CHECK(rd->right[1] == shift);

    auto m = m2(Q);
    auto rm = regular_bimodule(m);
    CHECK(rm->validate().empty());
    // left regular representation: E00*E01 = E01, E00*E11 = 0, ...
    // basis order {E00, E01, E10, E11}
    CHECK(rm->left[0].apply(unit_vec(4, 1, Q)) == unit_vec(4, 1, Q));
    CHECK(is_zero_vec(rm->left[0].apply(unit_vec(4, 3, Q))));
    CHECK(rm->right[3].apply(unit_vec(4, 1, Q)) == unit_vec(4, 1, Q));
}

TEST_CASE("outer tensor bimodule") {
    auto k = ground_field(Q);
    CHECK(outer_tensor_bimodule(k)->dim == 1);

    auto d = dual_numbers(Q);
    auto t = outer_tensor_bimodule(d);
    CHECK(t->dim == 4);
    CHECK(t->validate().empty());
    // x acts on the left only on the first leg: x.(1(x)1) = x(x)1 (index 2)
    CHECK(t->left[1].apply(unit_vec(4, 0, Q)) == unit_vec(4, 2, Q));
    // and kills x(x)1
    CHECK(is_zero_vec(t->left[1].apply(unit_vec(4, 2, Q))));
    // right action of x on 1(x)1 gives 1(x)x (index 1)
    CHECK(t->right[1].apply(unit_vec(4, 0, Q)) == unit_vec(4, 1, Q));
}

TEST_CASE("center") {
    auto d = dual_numbers(Q);
    CHECK(center(*d).dim() == 2);  // commutative: everything

    auto m = m2(Q);
    Subspace zm = center(*m);
    CHECK(zm.dim() == 1);
    CHECK(zm.contains(m->unit));

    auto t = upper_triangular2(Q);
    Subspace zt = center(*t);
    CHECK(zt.dim() == 1);
    CHECK(zt.contains(t->unit));
}

TEST_CASE("relative center") {
    auto d = dual_numbers(Q);
    // regular bimodule: Z_A(A) = Z(A)
    CHECK(relative_center(*d, *regular_bimodule(d)).same_span(center(*d)));

    // twisted dual numbers in char 0: only the scalars survive
    auto tw = twisted_dual_numbers(d);
    Subspace rel = relative_center(*d, *tw);
    CHECK(rel.dim() == 1);
    CHECK(rel.contains(d->unit));

    // commutative algebra, module restricted from an A-module: full algebra
    Bimodule sym;
    sym.algebra = d;
    sym.dim = 2;
    sym.left = d->left_mult;
    sym.right = d->left_mult;  // R_i = L_i
    auto symp = make_bimodule(std::move(sym));
    CHECK(relative_center(*d, *symp).dim() == 2);
}

TEST_CASE("invariants submodule") {
    auto d = dual_numbers(Q);
    CHECK(invariants_submodule(*d, *regular_bimodule(d)).dim() == 2);

    auto m = m2(Q);
    Subspace inv = invariants_submodule(*m, *regular_bimodule(m));
    CHECK(inv.dim() == 1);
    CHECK(inv.contains(m->unit));
    CHECK(inv.dim() == center(*m).dim());
}

TEST_CASE("derivation spaces") {
    auto k = ground_field(Q);
    auto dk = derivation_space(*k, *regular_bimodule(k));
    CHECK(dk.der.dim() == 0);

    // dual numbers char 0: Der is 1-dimensional (Euler D(x) = x), Inn = 0
    auto d = dual_numbers(Q);
    auto dd = derivation_space(*d, *regular_bimodule(d));
    CHECK(dd.der.dim() == 1);
    CHECK(dd.inn.dim() == 0);
    Matrix euler(2, 2, Q);
    euler.set(1, 1, Scalar::one(Q));  // 1 -> 0, x -> x
    CHECK(is_derivation(*d, *regular_bimodule(d), euler));
    CHECK(dd.der.contains(matrix_to_derivation_vec(euler)));

    // M_2(K): separable, so Der = Inn, dimension 3
    auto m = m2(Q);
    auto dm = derivation_space(*m, *regular_bimodule(m));
    CHECK(dm.der.dim() == 3);
    CHECK(dm.inn.dim() == 3);
    CHECK(dm.der.same_span(dm.inn));
}

TEST_CASE("Inn is contained in Der for assorted fixtures") {
    for (auto a : {dual_numbers(Q), product_kk(Q), m2(Q), upper_triangular2(Q),
                   group_z2(FieldSpec::prime(2)), group_klein(FieldSpec::prime(2))}) {
        for (auto m : {regular_bimodule(a), outer_tensor_bimodule(a)}) {
            auto ds = derivation_space(*a, *m);
            CHECK(ds.der.contains(ds.inn));
        }
    }
}

TEST_CASE("tensor over A") {
    auto d = dual_numbers(Q);
    auto reg = regular_bimodule(d);

    // A (x)_A A = A
    auto taa = tensor_over_A(reg, reg);
    CHECK(taa.module->dim == 2);
    Matrix rho = rho_unit_iso(taa, *reg);
    CHECK(rho.rows() == 2);
    CHECK(rho.cols() == 2);
    CHECK(rho.inverse().has_value());
    Matrix lam = lambda_unit_iso(taa, *reg);
    CHECK(lam == rho);  // both send a (x) b to ab on A (x)_A A

    // M (x)_A A = M for the twisted module
    auto tw = twisted_dual_numbers(d);
    auto tma = tensor_over_A(tw, reg);
    CHECK(tma.module->dim == 2);
    CHECK(rho_unit_iso(tma, *tw).inverse().has_value());

    // (A/x) (x)_A (A/x) is 1-dimensional
    Matrix xline(2, 1, Q);
    xline.set(1, 0, Scalar::one(Q));
    auto ax = quotient_bimodule(reg, Subspace::span(xline));
    auto tq = tensor_over_A(ax.module, ax.module);
    CHECK(tq.module->dim == 1);
}

TEST_CASE("tensor of regular with m keeps the dimension of m") {
    auto d = dual_numbers(Q);
    auto reg = regular_bimodule(d);
    for (auto m : {regular_bimodule(d), twisted_dual_numbers(d), outer_tensor_bimodule(d)}) {
        auto t = tensor_over_A(reg, m);
        CHECK(t.module->dim == m->dim);
        CHECK(lambda_unit_iso(t, *m).inverse().has_value());
    }
}

TEST_CASE("relative center of the outer tensor bimodule is smallest") {
    for (auto a : {dual_numbers(Q), product_kk(Q), m2(Q), upper_triangular2(Q)}) {
        Subspace zouter = relative_center(*a, *outer_tensor_bimodule(a));
        for (auto m : {regular_bimodule(a), outer_tensor_bimodule(a)}) {
            CHECK(relative_center(*a, *m).contains(zouter));
        }
    }
    // and on the twisted module as well
    auto d = dual_numbers(Q);
    CHECK(relative_center(*d, *twisted_dual_numbers(d))
              .contains(relative_center(*d, *outer_tensor_bimodule(d))));
}

TEST_CASE("matrix algebra constructor") {
    auto m = m2(Q);
    CHECK(m->dim == 4);
    CHECK(m->validate().empty());
    CHECK(center(*m).dim() == 1);

    auto d = dual_numbers(Q);
    auto md = matrix_algebra(d, 2);
    CHECK(md->dim == 8);
    CHECK(md->validate().empty());
    // center of M_2(dual numbers) = center of dual numbers, dim 2
    CHECK(center(*md).dim() == 2);
}

TEST_CASE("twisted bimodule rejects non-algebra maps") {
    auto d = dual_numbers(Q);
    Matrix bad(2, 2, Q);
    bad.set(0, 0, Scalar::one(Q));
    bad.set(0, 1, Scalar::one(Q));  // x -> 1 is not multiplicative
    CHECK_THROWS_AS(twisted_bimodule(d, bad), ValidationError);
}

TEST_CASE("subalgebra of the center") {
    auto m = m2(Q);
    auto z = subalgebra(m, center(*m));
    CHECK(z->dim == 1);
    auto d = dual_numbers(Q);
    auto zd = subalgebra(d, center(*d));
    CHECK(zd->dim == 2);
    CHECK(zd->is_commutative());
}
