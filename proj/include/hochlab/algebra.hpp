#pragma once

#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "hochlab/matrix.hpp"

namespace hochlab {

struct Algebra;
struct Bimodule;
using AlgebraPtr = std::shared_ptr<const Algebra>;
using BimodulePtr = std::shared_ptr<const Bimodule>;

// Finite-dimensional unital associative algebra, given by structure constants
// e_i e_j = sum_k c[i][j][k] e_k (sparse quadruples, omitted entries zero).
struct Algebra {
    FieldSpec field;
    int dim = 0;
    std::vector<std::string> basis_names;
    Vec unit;  // coordinates of 1
    std::vector<std::tuple<int, int, int, Scalar>> table;

    // caches built by finalize()
    std::vector<Matrix> left_mult;   // L_i = left multiplication by e_i
    std::vector<Matrix> right_mult;  // R_i
    Matrix mult;                     // dim x dim^2, columns e_i (x) e_j -> e_i e_j

    void finalize();
    std::vector<std::string> validate() const;  // violated identities, empty iff valid

    Vec multiply(const Vec& x, const Vec& y) const;
    Matrix left_action(const Vec& z) const;   // sum z_i L_i
    Matrix right_action(const Vec& z) const;  // sum z_i R_i
    bool is_commutative() const;
};

AlgebraPtr make_algebra(Algebra a);  // finalizes and fail-fasts on validate()

// A-bimodule with symmetric ground-field action: per basis element of A, the
// left action matrix L_i and right action matrix R_i on the module.
struct Bimodule {
    AlgebraPtr algebra;
    int dim = 0;
    std::vector<Matrix> left;
    std::vector<Matrix> right;

    std::vector<std::string> validate() const;
    Matrix left_action(const Vec& z) const;
    Matrix right_action(const Vec& z) const;
};

BimodulePtr make_bimodule(Bimodule m);  // fail-fast on validate()

struct BimoduleMap {
    BimodulePtr source, target;
    Matrix matrix;  // dim target x dim source

    bool is_equivariant() const;
    std::vector<std::string> validate() const;
};

BimodulePtr regular_bimodule(const AlgebraPtr& a);
// A (x) A with left action on the first leg, right action on the second
BimodulePtr outer_tensor_bimodule(const AlgebraPtr& a);
// regular left action, right action composed with an algebra endomorphism
BimodulePtr twisted_bimodule(const AlgebraPtr& a, const Matrix& endo);
BimodulePtr direct_sum_bimodule(const BimodulePtr& m, const BimodulePtr& n);

// sub-bimodule spanned by an action-stable subspace, in the given basis
BimodulePtr sub_bimodule(const BimodulePtr& parent, const Subspace& s);
// quotient by an action-stable subspace, carried by a QuotientSpace
struct QuotientBimodule {
    BimodulePtr module;
    QuotientSpace space;
};
QuotientBimodule quotient_bimodule(const BimodulePtr& parent, const Subspace& relations);

Subspace center(const Algebra& a);
Subspace relative_center(const Algebra& a, const Bimodule& m);
Subspace invariants_submodule(const Algebra& a, const Bimodule& m);

// K-linear maps A -> M are flattened column-major: index j*dim(M)+r is the
// r-th coordinate of the image of e_j.
struct DerivationSpaces {
    Subspace der;  // solutions of the Leibniz system
    Subspace inn;  // image of m -> (a -> am - ma)
};
DerivationSpaces derivation_space(const Algebra& a, const Bimodule& m);
Matrix derivation_to_matrix(const Algebra& a, const Bimodule& m, const Vec& flat);
Vec matrix_to_derivation_vec(const Matrix& d);
bool is_derivation(const Algebra& a, const Bimodule& m, const Matrix& d);
// a -> av - va for a fixed v in M
Matrix inner_derivation(const Algebra& a, const Bimodule& m, const Vec& v);

// M (x)_A N: quotient of M (x)_K N by (v.e_i (x) w) - (v (x) e_i.w)
struct TensorOverA {
    BimodulePtr module;
    Matrix projection;  // dim module x (dim m * dim n)
    Matrix section;
};
TensorOverA tensor_over_A(const BimodulePtr& m, const BimodulePtr& n);

// unit isomorphisms; lambda: A (x)_A M -> M, rho: M (x)_A A -> M
Matrix lambda_unit_iso(const TensorOverA& t, const Bimodule& m);
Matrix rho_unit_iso(const TensorOverA& t, const Bimodule& m);

// k x k matrices over A, basis E_{st} e_i ordered by (s*k+t)*dim(A)+i
AlgebraPtr matrix_algebra(const AlgebraPtr& a, int k);

// the subalgebra carried by a multiplicatively closed unital subspace
AlgebraPtr subalgebra(const AlgebraPtr& a, const Subspace& s,
                      const std::vector<std::string>& names = {});

}  // namespace hochlab
