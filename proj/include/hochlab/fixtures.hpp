#pragma once

#include "hochlab/algebra.hpp"

namespace hochlab {
namespace fixtures {

// K as a 1-dimensional algebra
AlgebraPtr ground_field(const FieldSpec& f);
// dual numbers K[x]/(x^2), basis {1, x}
AlgebraPtr dual_numbers(const FieldSpec& f);
// K x K, basis {e1, e2} of orthogonal idempotents
AlgebraPtr product_kk(const FieldSpec& f);
// 2x2 matrices over K, basis {E00, E01, E10, E11}
AlgebraPtr m2(const FieldSpec& f);
// upper triangular 2x2 matrices, basis {E00, E01, E11}
AlgebraPtr upper_triangular2(const FieldSpec& f);
// group algebra K[Z/2], basis {1, g}
AlgebraPtr group_z2(const FieldSpec& f);
// group algebra K[Z/2 x Z/2], basis {1, g, h, gh}
AlgebraPtr group_klein(const FieldSpec& f);

// the sign twist x -> -x on the dual numbers
Matrix dual_numbers_sign_twist(const AlgebraPtr& dual);
// regular left action, right action twisted by x -> -x
BimodulePtr twisted_dual_numbers(const AlgebraPtr& dual);

}  // namespace fixtures
}  // namespace hochlab
