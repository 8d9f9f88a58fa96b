#pragma once

#include "hochlab/algebra.hpp"

namespace hochlab {

long tensor_power(int base, int exp, long budget = 0);

// Hochschild n-cochain: a K-linear map A^{(x)n} -> M stored as a
// dim(M) x dim(A)^n matrix.  Column t is the value on the basis tensor
// e_{i_1} (x) ... (x) e_{i_n} where t enumerates tuples lexicographically
// with i_1 most significant.  degree -1 is the distinguished empty cochain.
struct Cochain {
    int degree = 0;
    BimodulePtr module;
    Matrix matrix;

    static Cochain zero(const BimodulePtr& m, int degree);
    static Cochain empty(const BimodulePtr& m) { return zero(m, -1); }
    static Cochain constant(const BimodulePtr& m, const Vec& value);  // degree 0

    bool is_zero() const { return matrix.is_zero(); }
    Vec flat() const;  // column-major flatten, index = column*dim(M)+row
    static Cochain from_flat(const BimodulePtr& m, int degree, const Vec& v);

    Cochain operator+(const Cochain& o) const;
    Cochain operator-(const Cochain& o) const;
    Cochain operator*(const Scalar& s) const;
    Cochain operator-() const;
};

// is m structurally the regular bimodule of its algebra
bool is_regular_module(const Bimodule& m);

Cochain differential(const Cochain& f);
// flattened matrix of the differential C^n(A,M) -> C^{n+1}(A,M)
Matrix differential_matrix(const BimodulePtr& m, int n, long budget = 0);

// exterior pairing; the value lands in M (x)_A N
struct CupResult {
    Cochain value;
    TensorOverA tensor;
};
CupResult cup(const Cochain& f, const Cochain& g);

// cups with A-coefficients on one side, composed with the unit isomorphism so
// the value stays in C^*(A,M): (g,f) -> g cup f and (f,g) -> f cup g
Cochain module_cup_left(const Cochain& g, const Cochain& f);
Cochain module_cup_right(const Cochain& f, const Cochain& g);

// f over M, g over A; the alternating sum of the slot substitutions f o_i g
Cochain bullet(const Cochain& f, const Cochain& g);
// {f,g} = f o g - (-1)^{(m-1)(n-1)} g o f, both over A
Cochain gerstenhaber_bracket(const Cochain& f, const Cochain& g);
// [f, z] = f o z for z in Z_M(A); rejects z outside the relative center
Cochain center_action(const Cochain& f, const Vec& z);
// defect of (+) on (f, g); identically zero
Cochain fundamental_formula_residual(const Cochain& f, const Cochain& g);

// HH^n(A,M) presented by cocycles, coboundaries, and pivot-chosen
// representatives completing the coboundary basis
class CohomologySpace {
public:
    CohomologySpace() = default;
    int degree() const { return degree_; }
    const BimodulePtr& module() const { return module_; }
    int dim() const { return representatives_.cols(); }
    const Subspace& cocycles() const { return cocycles_; }
    const Subspace& coboundaries() const { return coboundaries_; }
    const Matrix& representatives() const { return representatives_; }

    Cochain representative(int i) const;
    bool is_cocycle(const Cochain& c) const;
    bool is_coboundary(const Cochain& c) const;
    bool same_class(const Cochain& a, const Cochain& b) const;
    // coordinates in the representative basis modulo coboundaries
    std::optional<Vec> class_coordinates(const Cochain& c) const;

    friend CohomologySpace cohomology(const BimodulePtr& m, int n, long budget);

private:
    int degree_ = 0;
    BimodulePtr module_;
    Subspace cocycles_, coboundaries_;
    Matrix representatives_;
};

CohomologySpace cohomology(const BimodulePtr& m, int n, long budget = 0);

}  // namespace hochlab
