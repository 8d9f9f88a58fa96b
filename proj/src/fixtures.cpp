#include "hochlab/fixtures.hpp"

namespace hochlab {
namespace fixtures {

namespace {
Scalar one(const FieldSpec& f) { return Scalar::one(f); }
}

AlgebraPtr ground_field(const FieldSpec& f) {
    Algebra a;
    a.field = f;
    a.dim = 1;
    a.basis_names = {"1"};
    a.unit = {one(f)};
    a.table = {{0, 0, 0, one(f)}};
    return make_algebra(std::move(a));
}

AlgebraPtr dual_numbers(const FieldSpec& f) {
    Algebra a;
    a.field = f;
    a.dim = 2;
    a.basis_names = {"1", "x"};
    a.unit = {one(f), Scalar::zero(f)};
    a.table = {{0, 0, 0, one(f)}, {0, 1, 1, one(f)}, {1, 0, 1, one(f)}};  // x*x = 0
    return make_algebra(std::move(a));
}

AlgebraPtr product_kk(const FieldSpec& f) {
    Algebra a;
    a.field = f;
    a.dim = 2;
    a.basis_names = {"e1", "e2"};
    a.unit = {one(f), one(f)};
    a.table = {{0, 0, 0, one(f)}, {1, 1, 1, one(f)}};
    return make_algebra(std::move(a));
}

AlgebraPtr m2(const FieldSpec& f) { return matrix_algebra(ground_field(f), 2); }

AlgebraPtr upper_triangular2(const FieldSpec& f) {
    Algebra a;
    a.field = f;
    a.dim = 3;
    a.basis_names = {"E00", "E01", "E11"};
    a.unit = {one(f), Scalar::zero(f), one(f)};
    a.table = {{0, 0, 0, one(f)},   // E00 E00 = E00
               {0, 1, 1, one(f)},   // E00 E01 = E01
               {1, 2, 1, one(f)},   // E01 E11 = E01
               {2, 2, 2, one(f)}};  // E11 E11 = E11
    return make_algebra(std::move(a));
}

AlgebraPtr group_z2(const FieldSpec& f) {
    Algebra a;
    a.field = f;
    a.dim = 2;
    a.basis_names = {"1", "g"};
    a.unit = {one(f), Scalar::zero(f)};
    a.table = {{0, 0, 0, one(f)}, {0, 1, 1, one(f)}, {1, 0, 1, one(f)}, {1, 1, 0, one(f)}};
    return make_algebra(std::move(a));
}

AlgebraPtr group_klein(const FieldSpec& f) {
    Algebra a;
    a.field = f;
    a.dim = 4;
    a.basis_names = {"1", "g", "h", "gh"};
    a.unit = {one(f), Scalar::zero(f), Scalar::zero(f), Scalar::zero(f)};
    // indices in Z/2 x Z/2, product = xor
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) a.table.emplace_back(i, j, i ^ j, one(f));
    return make_algebra(std::move(a));
}

Matrix dual_numbers_sign_twist(const AlgebraPtr& dual) {
    Matrix endo = Matrix::identity(2, dual->field);
    endo.set(1, 1, -one(dual->field));
    return endo;
}

BimodulePtr twisted_dual_numbers(const AlgebraPtr& dual) {
    return twisted_bimodule(dual, dual_numbers_sign_twist(dual));
}

}  // namespace fixtures
}  // namespace hochlab
