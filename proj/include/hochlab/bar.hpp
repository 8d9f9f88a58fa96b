#pragma once

#include "hochlab/extension.hpp"

namespace hochlab {

// Bar resolution B_k = A^{(x)(k+2)} with outer actions, differentials
// beta_k(a_0 (x) ... (x) a_{k+1}) = sum (-1)^i a_0 (x) .. a_i a_{i+1} .. and
// augmentation mu : A (x) A -> A.  Exactness is verified eagerly.
struct BarResolution {
    AlgebraPtr alg;
    int max_degree = 0;
    std::vector<BimodulePtr> terms;  // B_0 .. B_N
    std::vector<Matrix> diff;        // diff[k] = beta_k : B_k -> B_{k-1}, k >= 1
    Matrix augmentation;             // mu : B_0 -> A
};

BarResolution build_bar(const AlgebraPtr& a, int max_degree, long budget = 10'000'000);

// adjunction Hom_{A^ev}(B_n, M) <-> C^n(A,M)
Cochain adjoint_cochain(const BarResolution& bar, int n, const BimodulePtr& m, const Matrix& phi);
Matrix cochain_to_bar_map(const BarResolution& bar, const Cochain& f);
bool is_bar_map_equivariant(const BarResolution& bar, int n, const Bimodule& m, const Matrix& phi);

// chain map B -> S^natural lifting id_A, built by linear solves on the free
// generators 1 (x) t (x) 1
struct ChainMap {
    std::vector<Matrix> comps;  // comps[k] : B_k -> E_k (comps[n] : B_n -> M)
};
ChainMap lift_identity(const BarResolution& bar, const NExtension& s,
                       PivotOrder order = PivotOrder::forward);

// homotopy s_k : B_k -> E_{k+1} with d s_k + s_{k-1} beta_k = h_k for a chain
// map h lifting zero
struct Homotopy {
    std::vector<Matrix> comps;
};
Homotopy null_homotopy(const BarResolution& bar, const NExtension& s,
                       const std::vector<Matrix>& h, PivotOrder order = PivotOrder::forward);

// kernel of the multiplication map with its universal derivation
struct Omega1 {
    BimodulePtr module;     // Omega^1_A in its own basis
    Matrix inclusion;       // into A (x) A
    Matrix universal_der;   // d : A -> Omega^1, a -> a(x)1 - 1(x)a
};
Omega1 omega1(const AlgebraPtr& a);

// mutually inverse maps Der_K(A,M) <-> Hom_{A^ev}(Omega^1_A, M)
Matrix derivation_to_omega_map(const Omega1& o, const Bimodule& m, const Matrix& d);
Matrix omega_map_to_derivation(const Omega1& o, const Bimodule& m, const Matrix& f);
// inner derivations correspond to maps factoring through the inclusion
bool omega_map_factors_through_inclusion(const Omega1& o, const BimodulePtr& m, const Matrix& f);

// derivation -> 1-extension (pushout of the fundamental sequence), and back
NExtension ext1_from_derivation(const AlgebraPtr& a, const BimodulePtr& m, const Matrix& d);
// D_e(a) = i^{-1}(ae - ea) for a preimage e of 1
Matrix derivation_from_extension(const NExtension& s, const Vec& e);
Vec preimage_of_unit(const NExtension& s, PivotOrder order = PivotOrder::forward);
// does the 1-extension admit a bimodule retraction r with r d_1 = id_M
bool extension_splits(const NExtension& s);

// chi: degree-n cocycle -> n-extension via the bar pushout; chi_inverse reads
// the class back off a lift of the identity
NExtension chi(const BarResolution& bar, const Cochain& phi);
Cochain chi_inverse(const BarResolution& bar, const NExtension& s,
                    PivotOrder order = PivotOrder::forward);

// 2-periodic resolution of the dual numbers; an oracle independent of the
// bar/cochain machinery
struct MinimalResolution {
    AlgebraPtr alg;
    std::vector<Matrix> diff;  // maps A(x)A -> A(x)A, alternating
    Matrix augmentation;
};
MinimalResolution minimal_resolution_dual_numbers(const AlgebraPtr& a, int max_degree);
std::vector<int> ext_dims_from_minimal(const MinimalResolution& r, const BimodulePtr& m,
                                       int max_degree);

}  // namespace hochlab
