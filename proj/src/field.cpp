#include "hochlab/field.hpp"

namespace hochlab {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(long p) {
    if (!is_prime(p)) throw ValidationError("field modulus " + std::to_string(p) + " is not prime");
    return FieldSpec{FieldKind::prime, p};
}

std::string FieldSpec::str() const {
    return kind == FieldKind::rational ? std::string("Q") : "F_" + std::to_string(p);
}

long mod_inverse(long a, long p) {
    // extended Euclid on (a, p), a not divisible by p
    long r0 = p, r1 = ((a % p) + p) % p;
    HL_CHECK(r1 != 0, "inverse of zero residue");
    long t0 = 0, t1 = 1;
    while (r1 != 0) {
        long q = r0 / r1;
        long r2 = r0 - q * r1;
        long t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    HL_CHECK(r0 == 1, "residue not invertible");
    return ((t0 % p) + p) % p;
}

Scalar Scalar::rational(mpq_class q) {
    Scalar s;
    s.kind_ = FieldKind::rational;
    q.canonicalize();
    s.rat_ = std::move(q);
    return s;
}

Scalar Scalar::rational(long num, long den) { return rational(mpq_class(num, den)); }

Scalar Scalar::residue(long v, long p) {
    Scalar s;
    s.kind_ = FieldKind::prime;
    s.p_ = p;
    s.res_ = ((v % p) + p) % p;
    return s;
}

Scalar Scalar::of(const FieldSpec& f, long value) {
    return f.kind == FieldKind::rational ? rational(mpq_class(value)) : residue(value, f.p);
}

FieldSpec Scalar::field() const {
    return kind_ == FieldKind::rational ? FieldSpec::rationals() : FieldSpec{FieldKind::prime, p_};
}

bool Scalar::is_zero() const { return kind_ == FieldKind::rational ? rat_ == 0 : res_ == 0; }
bool Scalar::is_one() const { return kind_ == FieldKind::rational ? rat_ == 1 : res_ == 1; }

void Scalar::check_same(const Scalar& o) const {
    HL_CHECK(kind_ == o.kind_ && (kind_ != FieldKind::prime || p_ == o.p_),
             "scalars from different fields");
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    if (kind_ == FieldKind::rational) return rational(rat_ + o.rat_);
    return residue(res_ + o.res_, p_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    check_same(o);
    if (kind_ == FieldKind::rational) return rational(rat_ - o.rat_);
    return residue(res_ - o.res_, p_);
}

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    if (kind_ == FieldKind::rational) return rational(rat_ * o.rat_);
    // fixtures keep p far below 2^31, so the product fits in a long
    return residue(res_ * o.res_, p_);
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::operator-() const {
    if (kind_ == FieldKind::rational) return rational(-rat_);
    return residue(-res_, p_);
}

Scalar Scalar::inv() const {
    HL_CHECK(!is_zero(), "inverse of zero");
    if (kind_ == FieldKind::rational) return rational(1 / rat_);
    return residue(mod_inverse(res_, p_), p_);
}

bool Scalar::operator==(const Scalar& o) const {
    if (kind_ != o.kind_) return false;
    if (kind_ == FieldKind::rational) return rat_ == o.rat_;
    return p_ == o.p_ && res_ == o.res_;
}

std::string Scalar::str() const {
    if (kind_ == FieldKind::prime) return std::to_string(res_);
    return rat_.get_num().get_str() + "/" + rat_.get_den().get_str();
}

Scalar Scalar::parse(const std::string& s, const FieldSpec& f) {
    if (s.empty()) throw ParseError("empty scalar string");
    if (f.kind == FieldKind::prime) {
        if (s.find('/') != std::string::npos)
            throw ParseError("scalar '" + s + "' is not a residue mod " + std::to_string(f.p));
        try {
            size_t pos = 0;
            long v = std::stol(s, &pos);
            if (pos != s.size()) throw ParseError("trailing characters in scalar '" + s + "'");
            return residue(v, f.p);
        } catch (const std::logic_error&) {
            throw ParseError("cannot parse scalar '" + s + "'");
        }
    }
    try {
        mpq_class q(s);
        q.canonicalize();
        if (q.get_den() == 0) throw ParseError("zero denominator in scalar '" + s + "'");
        return rational(q);
    } catch (const std::invalid_argument&) {
        throw ParseError("cannot parse scalar '" + s + "'");
    }
}

}  // namespace hochlab
