#pragma once

#include <cstdint>

#include "hochlab/cochain.hpp"

namespace hochlab {

// splitmix64; self-contained so seeded runs are byte-identical everywhere
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    long below(long n) {
        HL_CHECK(n > 0, "empty range");
        uint64_t limit = UINT64_MAX - UINT64_MAX % static_cast<uint64_t>(n);
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return static_cast<long>(v % static_cast<uint64_t>(n));
    }

    // small scalar: residue mod p, or an integer in [-2, 2]
    Scalar scalar(const FieldSpec& f) {
        if (f.kind == FieldKind::prime) return Scalar::residue(below(f.p), f.p);
        return Scalar::rational(below(5) - 2, 1);
    }

    Vec vec(int n, const FieldSpec& f) {
        Vec v;
        v.reserve(n);
        for (int i = 0; i < n; ++i) v.push_back(scalar(f));
        return v;
    }

    Cochain cochain(const BimodulePtr& m, int degree) {
        Cochain c = Cochain::zero(m, degree);
        for (int col = 0; col < c.matrix.cols(); ++col)
            for (int r = 0; r < m->dim; ++r) c.matrix.set(r, col, scalar(m->algebra->field));
        c.matrix.pack();
        return c;
    }

private:
    uint64_t state_;
};

}  // namespace hochlab
