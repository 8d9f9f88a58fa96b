#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hochlab/bar.hpp"
#include "hochlab/fixtures.hpp"
#include "hochlab/rng.hpp"

using namespace hochlab;
using namespace hochlab::fixtures;

namespace {
const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
}

TEST_CASE("bar resolution of the ground field") {
    auto k = ground_field(Q);
    BarResolution bar = build_bar(k, 3);
    for (int i = 1; i <= 3; ++i) {
        CHECK(bar.terms[i]->dim == 1);
        // differentials alternate between zero and identity
        if (i % 2 == 1)
            CHECK(bar.diff[i] == Matrix::identity(1, Q));
        else
            CHECK(bar.diff[i].is_zero());
    }
}

TEST_CASE("bar resolution of the dual numbers verifies eagerly") {
    auto d = dual_numbers(Q);
    BarResolution bar = build_bar(d, 3);
    CHECK((bar.diff[1] * bar.diff[2]).is_zero());
    CHECK((bar.diff[2] * bar.diff[3]).is_zero());
    CHECK((bar.augmentation * bar.diff[1]).is_zero());
    // exactness at degree 1: rank beta_1 + rank beta_2 = dim B_1
    CHECK(bar.diff[1].rank() + bar.diff[2].rank() == bar.terms[1]->dim);
    CHECK(bar.terms[2]->dim == 16);
}

TEST_CASE("bar budget guard names the offending degree") {
    auto d = dual_numbers(Q);
    try {
        build_bar(d, 6, 100);
        CHECK(false);
    } catch (const BudgetError& e) {
        CHECK(std::string(e.what()).find("B_5") != std::string::npos);
    }
}

TEST_CASE("adjunction round-trips and rejects non-equivariant maps") {
    auto d = dual_numbers(F2);
    BarResolution bar = build_bar(d, 3);
    auto tw = twisted_bimodule(d, dual_numbers_sign_twist(d));
    Rng rng(13);
    for (int n = 0; n <= 2; ++n) {
        Cochain f = rng.cochain(tw, n);
        Matrix phi = cochain_to_bar_map(bar, f);
        CHECK(is_bar_map_equivariant(bar, n, *tw, phi));
        Cochain back = adjoint_cochain(bar, n, tw, phi);
        CHECK(back.matrix == f.matrix);
    }
    // a random non-equivariant map is rejected
    Matrix junk(tw->dim, bar.terms[1]->dim, F2);
    junk.set(0, 3, Scalar::one(F2));
    CHECK_THROWS_AS(adjoint_cochain(bar, 1, tw, junk), ValidationError);
}

TEST_CASE("adjunction intertwines the differentials") {
    auto d = dual_numbers(F2);
    BarResolution bar = build_bar(d, 3);
    auto reg = regular_bimodule(d);
    Rng rng(29);
    for (int n = 0; n <= 2; ++n) {
        Cochain f = rng.cochain(reg, n);
        Matrix phi = cochain_to_bar_map(bar, f);
        // Hom(beta_{n+1}, M) corresponds to the cochain differential
        Cochain lhs = adjoint_cochain(bar, n + 1, reg, phi * bar.diff[n + 1]);
        CHECK(lhs.matrix == differential(f).matrix);
    }
}

TEST_CASE("lift of the identity along a split extension") {
    auto d = dual_numbers(Q);
    auto reg = regular_bimodule(d);
    BarResolution bar = build_bar(d, 2);
    NExtension triv = trivial_extension(reg, 1);
    ChainMap phi = lift_identity(bar, triv);
    CHECK(phi.comps.size() == 2);
    // verified internally; spot-check the augmentation square
    CHECK(triv.d(0) * phi.comps[0] == bar.augmentation);
}

TEST_CASE("two lifts differ by a null-homotopic map") {
    auto d = dual_numbers(Q);
    auto reg = regular_bimodule(d);
    BarResolution bar = build_bar(d, 3);
    CohomologySpace h2 = cohomology(reg, 2);
    REQUIRE(h2.dim() >= 1);
    NExtension s = chi(bar, h2.representative(0));
    ChainMap a = lift_identity(bar, s, PivotOrder::forward);
    ChainMap b = lift_identity(bar, s, PivotOrder::reversed);
    std::vector<Matrix> h;
    for (size_t k = 0; k < a.comps.size(); ++k) h.push_back(a.comps[k] - b.comps[k]);
    Homotopy hom = null_homotopy(bar, s, h);
    CHECK(hom.comps.size() == 2);
}

TEST_CASE("null homotopy recovers constructed homotopies") {
    auto d = dual_numbers(Q);
    auto reg = regular_bimodule(d);
    BarResolution bar = build_bar(d, 3);
    NExtension triv = trivial_extension(reg, 2);
    // h = d t + t beta for a random equivariant t given on generators
    Rng rng(71);
    std::vector<Matrix> t;
    for (int k = 0; k < 2; ++k) {
        Matrix gens(triv.term(k + 1).dim, static_cast<int>(tensor_power(2, k)), Q);
        for (int r = 0; r < gens.rows(); ++r)
            for (int c = 0; c < gens.cols(); ++c) gens.set(r, c, rng.scalar(Q));
        // extend equivariantly through the cochain -> bar map of the term
        // via the public interface: treat columns as generator images
        t.push_back(gens);
    }
    // build equivariant maps from generator images using cochain_to_bar_map
    // on a fake module equal to the target term
    std::vector<Matrix> teq;
    for (int k = 0; k < 2; ++k) {
        Bimodule asmod = triv.term(k + 1);
        auto modp = std::make_shared<const Bimodule>(asmod);
        Cochain c = Cochain::zero(modp, k);
        for (int r = 0; r < t[k].rows(); ++r)
            for (int cc = 0; cc < t[k].cols(); ++cc) c.matrix.set(r, cc, t[k].at(r, cc));
        teq.push_back(cochain_to_bar_map(bar, c));
    }
    std::vector<Matrix> h(3);
    h[0] = triv.d(1) * teq[0];
    h[1] = triv.d(2) * teq[1] + teq[0] * bar.diff[1];
    h[2] = teq[1] * bar.diff[2];
    Homotopy hom = null_homotopy(bar, triv, h);
    CHECK(hom.comps.size() == 2);  // internal identities already verified
}

TEST_CASE("omega1") {
    auto k = ground_field(Q);
    CHECK(omega1(k).module->dim == 0);

    auto d = dual_numbers(Q);
    Omega1 o = omega1(d);
    CHECK(o.module->dim == 2);
    // d(1) = 0, d(x) = x(x)1 - 1(x)x != 0
    CHECK(is_zero_vec(o.universal_der.column(0)));
    CHECK(!is_zero_vec(o.universal_der.column(1)));

    auto m = m2(Q);
    CHECK(omega1(m).module->dim == 12);  // 16 - 4
}

TEST_CASE("derivation dictionary") {
    auto d = dual_numbers(Q);
    auto reg = regular_bimodule(d);
    Omega1 o = omega1(d);

    // zero maps to zero
    Matrix zero(2, 2, Q);
    CHECK(derivation_to_omega_map(o, *reg, zero).is_zero());

    // Euler derivation round-trips
    Matrix euler(2, 2, Q);
    euler.set(1, 1, Scalar::one(Q));
    Matrix ebar = derivation_to_omega_map(o, *reg, euler);
    CHECK(omega_map_to_derivation(o, *reg, ebar) == euler);
    // Euler is not inner: its omega map does not factor through the inclusion
    CHECK(!omega_map_factors_through_inclusion(o, reg, ebar));

    // inner derivations factor through the inclusion
    auto m = m2(Q);
    auto rm = regular_bimodule(m);
    Omega1 om = omega1(m);
    Matrix inner = inner_derivation(*m, *rm, unit_vec(4, 1, Q));
    Matrix ibar = derivation_to_omega_map(om, *rm, inner);
    CHECK(omega_map_to_derivation(om, *rm, ibar) == inner);
    CHECK(omega_map_factors_through_inclusion(om, rm, ibar));

    // round trip in the other direction on a random equivariant omega-map
    Rng rng(5);
    Vec v = rng.vec(4, Q);
    Matrix dv = inner_derivation(*m, *rm, v);
    Matrix dvbar = derivation_to_omega_map(om, *rm, dv);
    CHECK(omega_map_to_derivation(om, *rm, dvbar) == dv);
}

TEST_CASE("ext1 from derivation and back") {
    auto d = dual_numbers(Q);
    auto reg = regular_bimodule(d);

    // inner (here: zero) derivation gives a split extension
    Matrix zero(2, 2, Q);
    NExtension se = ext1_from_derivation(d, reg, zero);
    CHECK(extension_splits(se));

    // Euler derivation gives a non-split extension
    Matrix euler(2, 2, Q);
    euler.set(1, 1, Scalar::one(Q));
    NExtension s = ext1_from_derivation(d, reg, euler);
    CHECK(s.validate().empty());
    CHECK(!extension_splits(s));

    // round trip: derivation_from_extension recovers Euler modulo Inn
    Vec e = preimage_of_unit(s);
    Matrix back = derivation_from_extension(s, e);
    auto ds = derivation_space(*d, *reg);
    Vec diff = matrix_to_derivation_vec(back - euler);
    CHECK(ds.inn.contains(diff));

    // different preimages of 1 give inner-equivalent derivations
    auto m = m2(Q);
    auto rm = regular_bimodule(m);
    Matrix inner = inner_derivation(*m, *rm, unit_vec(4, 1, Q));
    NExtension si = ext1_from_derivation(m, rm, inner);
    CHECK(extension_splits(si));
    Vec e1 = preimage_of_unit(si, PivotOrder::forward);
    Vec e2 = preimage_of_unit(si, PivotOrder::reversed);
    Matrix d1 = derivation_from_extension(si, e1);
    Matrix d2 = derivation_from_extension(si, e2);
    auto dsm = derivation_space(*m, *rm);
    CHECK(dsm.inn.contains(matrix_to_derivation_vec(d1 - d2)));
}

TEST_CASE("chi and chi_inverse") {
    auto d = dual_numbers(Q);
    auto reg = regular_bimodule(d);
    BarResolution bar = build_bar(d, 4);

    for (int n = 1; n <= 3; ++n) {
        CohomologySpace h = cohomology(reg, n);
        REQUIRE(h.dim() >= 1);
        Cochain rep = h.representative(0);
        NExtension s = chi(bar, rep);
        CHECK(s.length() == n);
        CHECK(s.validate().empty());
        Cochain back = chi_inverse(bar, s);
        CHECK(h.same_class(back, rep));
    }

    // a coboundary maps to an extension equivalent to the trivial one
    Rng rng(19);
    Cochain any = rng.cochain(reg, 1);
    Cochain cob = differential(any);
    NExtension sc = chi(bar, cob);
    NExtension triv = trivial_extension(reg, 2);
    CHECK(connect_extensions(sc, triv).has_value() || connect_extensions(triv, sc).has_value());

    // non-cocycles are rejected
    Cochain junk = rng.cochain(reg, 2);
    if (!differential(junk).is_zero()) CHECK_THROWS_AS(chi(bar, junk), ValidationError);
}

TEST_CASE("chi at degree 1 matches the derivation pushout") {
    auto d = dual_numbers(Q);
    auto reg = regular_bimodule(d);
    BarResolution bar = build_bar(d, 2);
    Matrix euler(2, 2, Q);
    euler.set(1, 1, Scalar::one(Q));
    // the Euler derivation as a degree-1 cocycle
    Cochain c = Cochain::zero(reg, 1);
    c.matrix.set(1, 1, Scalar::one(Q));
    NExtension via_chi = chi(bar, c);
    NExtension via_omega = ext1_from_derivation(d, reg, euler);
    bool connected = connect_extensions(via_chi, via_omega).has_value() ||
                     connect_extensions(via_omega, via_chi).has_value();
    CHECK(connected);
}

TEST_CASE("minimal resolution fixture") {
    auto dq = dual_numbers(Q);
    MinimalResolution r = minimal_resolution_dual_numbers(dq, 5);
    auto dims = ext_dims_from_minimal(r, regular_bimodule(dq), 4);
    CHECK(dims == std::vector<int>{2, 1, 1, 1, 1});

    auto d2 = dual_numbers(F2);
    MinimalResolution r2 = minimal_resolution_dual_numbers(d2, 5);
    auto dims2 = ext_dims_from_minimal(r2, regular_bimodule(d2), 4);
    CHECK(dims2 == std::vector<int>{2, 2, 2, 2, 2});

    // wrong algebra rejected
    CHECK_THROWS_AS(minimal_resolution_dual_numbers(product_kk(Q), 3), ValidationError);
}

TEST_CASE("cochain cohomology agrees with the independent minimal resolution") {
    for (const FieldSpec& f : {Q, F2}) {
        auto d = dual_numbers(f);
        MinimalResolution r = minimal_resolution_dual_numbers(d, 5);
        for (auto m : {regular_bimodule(d), twisted_bimodule(d, dual_numbers_sign_twist(d))}) {
            auto dims = ext_dims_from_minimal(r, m, 4);
            for (int n = 0; n <= 4; ++n) CHECK(cohomology(m, n).dim() == dims[n]);
        }
    }
}
