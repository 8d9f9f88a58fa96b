#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace hochlab {

// Contract violations (bad dimensions, mixed fields, ...) throw logic_error;
// bad user data throws ValidationError; resource caps throw BudgetError.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define HL_CHECK(cond, msg)                       \
    do {                                          \
        if (!(cond)) throw std::logic_error(msg); \
    } while (0)

enum class FieldKind { rational, prime };

struct FieldSpec {
    FieldKind kind = FieldKind::rational;
    long p = 0;  // modulus, meaningful only for kind == prime

    bool operator==(const FieldSpec&) const = default;

    static FieldSpec rationals() { return FieldSpec{FieldKind::rational, 0}; }
    static FieldSpec prime(long p);  // checks primality by trial division

    long characteristic() const { return kind == FieldKind::prime ? p : 0; }
    std::string str() const;
};

bool is_prime(long n);

// Element of Q (arbitrary precision) or of F_p (least residue).  Every scalar
// knows its field; binary operations require matching fields.
class Scalar {
public:
    Scalar() : kind_(FieldKind::rational), rat_(0) {}

    static Scalar rational(mpq_class q);
    static Scalar rational(long num, long den);
    static Scalar residue(long v, long p);
    static Scalar of(const FieldSpec& f, long value);
    static Scalar zero(const FieldSpec& f) { return of(f, 0); }
    static Scalar one(const FieldSpec& f) { return of(f, 1); }

    FieldSpec field() const;
    bool is_zero() const;
    bool is_one() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;  // o nonzero
    Scalar operator-() const;
    Scalar inv() const;  // nonzero
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // "a/b" with b > 0 and gcd(a,b) = 1, or the decimal residue "r".
    std::string str() const;
    static Scalar parse(const std::string& s, const FieldSpec& f);

    const mpq_class& rat() const { return rat_; }
    long res() const { return res_; }

private:
    FieldKind kind_;
    mpq_class rat_;  // rational value
    long res_ = 0;   // least residue, prime kind
    long p_ = 0;

    void check_same(const Scalar& o) const;
};

long mod_inverse(long a, long p);

}  // namespace hochlab
