#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace chevsuper {

/// Ground field selection: exact rationals (modulus 0) or GF(p) with p > 3.
class Field {
public:
    constexpr Field() = default;

    static Field rational() { return Field{}; }
    /// Throws InvalidField unless p is a prime > 3 and fits in 31 bits.
    static Field prime(std::uint64_t p);
    /// Parses "rational", "Q", or "mod:<p>".
    static Field parse(const std::string& text);

    std::uint64_t modulus() const { return modulus_; }
    bool is_rational() const { return modulus_ == 0; }
    std::string name() const;

    friend bool operator==(Field a, Field b) { return a.modulus_ == b.modulus_; }
    friend bool operator!=(Field a, Field b) { return !(a == b); }

private:
    explicit Field(std::uint64_t p) : modulus_(p) {}
    std::uint64_t modulus_ = 0;
};

/// Process-wide default ring; initialised from CHEVSUPER_FIELD when set.
Field default_field();
void set_default_field(Field f);

/// Exact scalar: a reduced rational, or a residue modulo a prime.
///
/// Rationals are promoted into GF(p) when mixed with residues, so integer
/// structure constants combine freely with prime-field parameters.
class Scalar {
public:
    Scalar() = default;
    Scalar(long n) : value_(n) {}  // NOLINT: integers convert implicitly
    Scalar(long num, long den);
    explicit Scalar(mpq_class q);

    static Scalar in(Field f, long n);
    static Scalar in(Field f, const mpq_class& q);
    /// Accepts "a", "a/b" and "r mod p".
    static Scalar parse(const std::string& text);

    Field field() const;
    std::uint64_t modulus() const { return modulus_; }

    bool is_zero() const;
    bool is_one() const;
    /// For residues this is always true.
    bool is_integer() const;
    int sign() const;  // residues: 0 or 1

    /// Rational value; throws FieldMismatch for residues.
    const mpq_class& rational() const;
    std::uint64_t residue() const { return residue_; }
    /// Integer value of a rational integer; throws NotRational otherwise.
    long to_long() const;

    Scalar inv() const;
    Scalar operator-() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// "num/den" (or "num" when integral) for rationals, "r mod p" for residues.
    std::string to_string() const;

private:
    void promote_to(std::uint64_t p);
    static std::uint64_t reduce(const mpq_class& q, std::uint64_t p);

    mpq_class value_;
    std::uint64_t residue_ = 0;
    std::uint64_t modulus_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

Scalar scalar_add(const Scalar& a, const Scalar& b);
Scalar scalar_mul(const Scalar& a, const Scalar& b);
Scalar scalar_neg(const Scalar& a);
Scalar scalar_inv(const Scalar& a);

/// m(m-1)...(m-n+1)/n! for any integer m and n >= 0.
mpz_class integer_binomial(const mpz_class& m, unsigned long n);
long integer_binomial(long m, unsigned long n);

}  // namespace chevsuper
