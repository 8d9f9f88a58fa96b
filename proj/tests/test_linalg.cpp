#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hochlab/matrix.hpp"
#include "hochlab/rng.hpp"

using namespace hochlab;

namespace {

const FieldSpec Q = FieldSpec::rationals();

Matrix from_ints(int rows, int cols, std::vector<long> vals, const FieldSpec& f) {
    Matrix m(rows, cols, f);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m.set(r, c, Scalar::of(f, vals[r * cols + c]));
    return m;
}

// brute-force kernel over F_p by enumerating all vectors, p in {2,3}, few cols
std::vector<Vec> enumerate_kernel(const Matrix& m) {
    long p = m.field().p;
    std::vector<Vec> ker;
    long total = 1;
    for (int i = 0; i < m.cols(); ++i) total *= p;
    for (long code = 0; code < total; ++code) {
        Vec v(m.cols(), Scalar::zero(m.field()));
        long c = code;
        for (int i = 0; i < m.cols(); ++i) {
            v[i] = Scalar::residue(c % p, p);
            c /= p;
        }
        if (is_zero_vec(m.apply(v))) ker.push_back(v);
    }
    return ker;
}

}  // namespace

TEST_CASE("scalar arithmetic and serialization") {
    Scalar a = Scalar::rational(1, 3), b = Scalar::rational(2, 5);
    CHECK((a + b).str() == "11/15");
    CHECK((a * b).str() == "2/15");
    CHECK((a - a).is_zero());
    CHECK(a.inv().str() == "3/1");
    CHECK(Scalar::parse("-4/6", Q) == Scalar::rational(-2, 3));
    CHECK(Scalar::parse("7", Q) == Scalar::rational(7, 1));

    FieldSpec f5 = FieldSpec::prime(5);
    Scalar x = Scalar::residue(3, 5), y = Scalar::residue(4, 5);
    CHECK((x * y).res() == 2);
    CHECK((x + y).res() == 2);
    CHECK(x.inv().res() == 2);
    CHECK(Scalar::parse("9", f5).res() == 4);
    CHECK(x.str() == "3");

    CHECK_THROWS_AS(FieldSpec::prime(6), ValidationError);
    CHECK_THROWS_AS(Scalar::parse("1/2", f5), ParseError);
}

TEST_CASE("rref basic cases") {
    // identity 2x2 -> itself, pivots [0,1]
    Matrix id = Matrix::identity(2, Q);
    auto [r1, p1] = id.rref();
    CHECK(r1 == id);
    CHECK(p1 == std::vector<int>{0, 1});

    // zero 3x2 -> zero, no pivots
    Matrix z(3, 2, Q);
    auto [r2, p2] = z.rref();
    CHECK(r2.is_zero());
    CHECK(p2.empty());

    // [[2,4],[1,2]] -> [[1,2],[0,0]], pivots [0]
    Matrix m = from_ints(2, 2, {2, 4, 1, 2}, Q);
    auto [r3, p3] = m.rref();
    CHECK(r3 == from_ints(2, 2, {1, 2, 0, 0}, Q));
    CHECK(p3 == std::vector<int>{0});
}

TEST_CASE("kernel basis") {
    CHECK(Matrix::identity(3, Q).kernel_basis_matrix().cols() == 0);
    CHECK(Matrix(2, 3, Q).kernel_basis_matrix().cols() == 3);

    FieldSpec f2 = FieldSpec::prime(2);
    Matrix m = from_ints(1, 2, {1, 1}, f2);
    Matrix k = m.kernel_basis_matrix();
    REQUIRE(k.cols() == 1);
    CHECK(k.at(0, 0) == Scalar::residue(1, 2));
    CHECK(k.at(1, 0) == Scalar::residue(1, 2));
}

TEST_CASE("kernel agrees with exhaustive enumeration over F_2 and F_3") {
    for (long p : {2L, 3L}) {
        FieldSpec f = FieldSpec::prime(p);
        Rng rng(42 + p);
        for (int trial = 0; trial < 25; ++trial) {
            int rows = 1 + static_cast<int>(rng.below(4));
            int cols = 1 + static_cast<int>(rng.below(4));
            Matrix m(rows, cols, f);
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c) m.set(r, c, rng.scalar(f));
            Matrix k = m.kernel_basis_matrix();
            auto brute = enumerate_kernel(m);
            long expect = 1;
            for (int i = 0; i < k.cols(); ++i) expect *= p;
            CHECK(static_cast<long>(brute.size()) == expect);
            CHECK((m * k).is_zero());
            CHECK(m.rank() + k.cols() == cols);
        }
    }
}

TEST_CASE("solve") {
    Matrix id = Matrix::identity(3, Q);
    Vec v = {Scalar::of(Q, 4), Scalar::of(Q, -1), Scalar::of(Q, 0)};
    CHECK(*id.solve(v) == v);

    Matrix z(2, 2, Q);
    Vec nz = {Scalar::of(Q, 1), Scalar::of(Q, 0)};
    CHECK(!z.solve(nz).has_value());

    Matrix m = from_ints(2, 2, {1, 2, 2, 4}, Q);
    Vec rhs = {Scalar::of(Q, 1), Scalar::of(Q, 2)};
    auto x = m.solve(rhs);
    REQUIRE(x.has_value());
    CHECK(m.apply(*x) == rhs);

    // reversed pivot order gives a solution too, possibly a different one
    auto y = m.solve(rhs, PivotOrder::reversed);
    REQUIRE(y.has_value());
    CHECK(m.apply(*y) == rhs);
    CHECK(!(*x == *y));
}

TEST_CASE("solve(m, m*x) reproduces the image vector") {
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        int rows = 1 + static_cast<int>(rng.below(5));
        int cols = 1 + static_cast<int>(rng.below(5));
        Matrix m(rows, cols, Q);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) m.set(r, c, rng.scalar(Q));
        Vec x = rng.vec(cols, Q);
        Vec b = m.apply(x);
        auto sol = m.solve(b);
        REQUIRE(sol.has_value());
        CHECK(m.apply(*sol) == b);
    }
}

TEST_CASE("quotient spaces") {
    // no relations: quotient is the ambient space
    QuotientSpace q0 = QuotientSpace::make(3, Subspace(3, Q));
    CHECK(q0.dim() == 3);
    CHECK(q0.projection() == Matrix::identity(3, Q));

    // full relations: everything collapses
    QuotientSpace q1 = QuotientSpace::make(2, Subspace::full(2, Q));
    CHECK(q1.dim() == 0);

    // ambient 3 modulo span{(1,1,0)}
    Matrix rel(3, 1, Q);
    rel.set(0, 0, Scalar::of(Q, 1));
    rel.set(1, 0, Scalar::of(Q, 1));
    QuotientSpace q = QuotientSpace::make(3, Subspace::span(rel));
    CHECK(q.dim() == 2);
    CHECK(is_zero_vec(q.projection().apply(rel.column(0))));
    CHECK(q.projection() * q.section() == Matrix::identity(2, Q));
}

TEST_CASE("quotient invariants on random relation spaces") {
    Rng rng(99);
    FieldSpec f3 = FieldSpec::prime(3);
    for (const FieldSpec& f : {Q, f3}) {
        for (int trial = 0; trial < 15; ++trial) {
            int ambient = 1 + static_cast<int>(rng.below(6));
            int nrel = static_cast<int>(rng.below(ambient + 1));
            Matrix rel(ambient, nrel, f);
            for (int r = 0; r < ambient; ++r)
                for (int c = 0; c < nrel; ++c) rel.set(r, c, rng.scalar(f));
            Subspace rsp = Subspace::span(rel);
            QuotientSpace q = QuotientSpace::make(ambient, rsp);
            CHECK(q.dim() == ambient - rsp.dim());
            CHECK((q.projection() * rsp.basis()).is_zero());
            CHECK(q.projection() * q.section() == Matrix::identity(q.dim(), f));
        }
    }
}

TEST_CASE("subspace operations") {
    Matrix a(3, 1, Q), b(3, 2, Q);
    a.set(0, 0, Scalar::of(Q, 1));
    b.set(0, 0, Scalar::of(Q, 1));
    b.set(1, 1, Scalar::of(Q, 1));
    Subspace sa = Subspace::span(a), sb = Subspace::span(b);
    CHECK(sb.contains(sa));
    CHECK(!sa.contains(sb));
    CHECK(Subspace::intersect(sa, sb).same_span(sa));
    CHECK(Subspace::sum(sa, sb).same_span(sb));
}

TEST_CASE("storage switches between sparse and dense by density") {
    Matrix sparse(10, 10, Q);
    sparse.set(0, 0, Scalar::of(Q, 1));
    sparse.pack();
    CHECK(!sparse.is_dense());
    Matrix dense = Matrix::identity(2, Q);
    dense.set(0, 1, Scalar::of(Q, 3));
    dense.pack();
    CHECK(dense.is_dense());
    // representation change preserves entries
    Matrix again = dense;
    again.pack();
    CHECK(again == dense);
}

TEST_CASE("matrix inverse") {
    Matrix m = from_ints(2, 2, {1, 1, 0, 1}, Q);
    auto inv = m.inverse();
    REQUIRE(inv.has_value());
    CHECK(*inv * m == Matrix::identity(2, Q));
    Matrix sing = from_ints(2, 2, {1, 2, 2, 4}, Q);
    CHECK(!sing.inverse().has_value());
}
