#pragma once

#include "hochlab/cochain.hpp"

namespace hochlab {

struct BarResolution;

// Exact sequence 0 -> M -> E_{n-1} -> ... -> E_0 -> A -> 0 of bimodules.
// mids[k] = E_k (so mids[0] is the term next to A); maps[k] is d_k with
// d_0 : E_0 -> A, d_k : E_k -> E_{k-1}, d_n : M -> E_{n-1}.
struct NExtension {
    BimodulePtr left;   // M
    BimodulePtr right;  // A as the regular bimodule
    std::vector<BimodulePtr> mids;
    std::vector<Matrix> maps;

    int length() const { return static_cast<int>(mids.size()); }
    const Matrix& d(int k) const { return maps[k]; }
    const Bimodule& term(int k) const;  // k = -1 -> A, k = n -> M, else E_k

    std::vector<std::string> validate() const;
};

NExtension make_extension(BimodulePtr left, BimodulePtr right, std::vector<BimodulePtr> mids,
                          std::vector<Matrix> maps);  // fail-fast validation
NExtension trivial_extension(const BimodulePtr& m, int n);

// morphism of extensions: identity on both ends, commuting squares
struct ExtMorphism {
    std::vector<Matrix> comps;  // comps[k] : source E_k -> target E_k
};
std::vector<std::string> validate_morphism(const NExtension& s, const NExtension& t,
                                           const ExtMorphism& m);

struct LoopPair {
    NExtension source;                    // S # f
    NExtension target;                    // f # S
    ExtMorphism f_lambda, f_rho;          // the two parallel morphisms

    bool is_trivial() const;  // F_lambda == F_rho
};

// left/right multiplication difference of z on m; zero iff z in Z_M(A)
Matrix defect(const Algebra& a, const Vec& z, const Bimodule& m);

// Yoneda splice S # f: pushout of the left end along multiplication by z
NExtension splice_right(const NExtension& s, const Vec& z);
// f # S: pullback of the right end
NExtension splice_left(const Vec& z, const NExtension& s);

LoopPair loop(const NExtension& s, const Vec& z);

// the extension-side bracket <[S], z>: lift the identity along the bar
// resolution, trivialize the loop difference by a null-homotopy, and read off
// the degree-(n-1) cocycle
Cochain ext_bracket(const NExtension& s, const Vec& z, const BarResolution& bar,
                    PivotOrder order = PivotOrder::forward);

NExtension baer_sum(const NExtension& s, const NExtension& t);

// search for a connecting morphism s -> t (a single linear solve); same ends
// and length required
std::optional<ExtMorphism> connect_extensions(const NExtension& s, const NExtension& t);

}  // namespace hochlab
