#include "chevsuper/scalar.hpp"

#include <cstdlib>
#include <mutex>
#include <ostream>
#include <regex>

#include "chevsuper/errors.hpp"

namespace chevsuper {

namespace {

bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    while (e != 0) {
        if (e & 1U) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1U;
    }
    return r;
}

std::mutex g_field_mutex;
bool g_field_init = false;
Field g_field;

}  // namespace

Field Field::prime(std::uint64_t p) {
    if (p <= 3) {
        throw InvalidField("characteristic " + std::to_string(p) +
                           " is not allowed; need a prime p > 3");
    }
    if (p >= (1ULL << 31) || !is_prime(p)) {
        throw InvalidField("modulus " + std::to_string(p) + " is not a supported prime");
    }
    return Field(p);
}

Field Field::parse(const std::string& text) {
    if (text == "rational" || text == "Q" || text.empty()) return rational();
    static const std::regex mod_re(R"(^mod:(\d+)$)");
    std::smatch m;
    if (std::regex_match(text, m, mod_re)) {
        return prime(std::stoull(m[1].str()));
    }
    throw InvalidField("cannot parse field '" + text + "'");
}

std::string Field::name() const {
    return is_rational() ? std::string("rational") : "mod:" + std::to_string(modulus_);
}

Field default_field() {
    std::lock_guard<std::mutex> lock(g_field_mutex);
    if (!g_field_init) {
        g_field_init = true;
        if (const char* env = std::getenv("CHEVSUPER_FIELD")) g_field = Field::parse(env);
    }
    return g_field;
}

void set_default_field(Field f) {
    std::lock_guard<std::mutex> lock(g_field_mutex);
    g_field_init = true;
    g_field = f;
}

Scalar::Scalar(long num, long den) {
    if (den == 0) throw DivisionByZero("zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Scalar::Scalar(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }

Scalar Scalar::in(Field f, long n) {
    Scalar s(n);
    if (!f.is_rational()) s.promote_to(f.modulus());
    return s;
}

Scalar Scalar::in(Field f, const mpq_class& q) {
    Scalar s(q);
    if (!f.is_rational()) s.promote_to(f.modulus());
    return s;
}

Scalar Scalar::parse(const std::string& text) {
    static const std::regex mod_re(R"(^\s*(-?\d+)\s+mod\s+(\d+)\s*$)");
    static const std::regex rat_re(R"(^\s*([+-]?\d+)(?:/(\d+))?\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, mod_re)) {
        Field f = Field::prime(std::stoull(m[2].str()));
        return in(f, mpq_class(m[1].str()));
    }
    if (std::regex_match(text, m, rat_re)) {
        mpz_class num(m[1].str()[0] == '+' ? m[1].str().substr(1) : m[1].str());
        mpz_class den = m[2].matched ? mpz_class(m[2].str()) : mpz_class(1);
        if (den == 0) throw DivisionByZero("zero denominator in '" + text + "'");
        return Scalar(mpq_class(num, den));
    }
    throw ParseError("cannot parse scalar '" + text + "'");
}

Field Scalar::field() const {
    return modulus_ == 0 ? Field::rational() : Field::prime(modulus_);
}

bool Scalar::is_zero() const { return modulus_ == 0 ? sgn(value_) == 0 : residue_ == 0; }

bool Scalar::is_one() const { return modulus_ == 0 ? value_ == 1 : residue_ == 1; }

bool Scalar::is_integer() const {
    return modulus_ != 0 || value_.get_den() == 1;
}

int Scalar::sign() const {
    if (modulus_ != 0) return residue_ == 0 ? 0 : 1;
    return sgn(value_);
}

const mpq_class& Scalar::rational() const {
    if (modulus_ != 0) throw FieldMismatch("residue has no rational value");
    return value_;
}

long Scalar::to_long() const {
    if (modulus_ != 0 || value_.get_den() != 1 || !value_.get_num().fits_slong_p()) {
        throw NotRational("scalar " + to_string() + " is not a machine integer");
    }
    return value_.get_num().get_si();
}

std::uint64_t Scalar::reduce(const mpq_class& q, std::uint64_t p) {
    mpz_class pz(static_cast<unsigned long>(p));
    mpz_class num = q.get_num() % pz;
    if (num < 0) num += pz;
    mpz_class den = q.get_den() % pz;
    if (den == 0) {
        throw DivisionByZero("denominator of " + q.get_str() + " vanishes mod " +
                             std::to_string(p));
    }
    std::uint64_t n = num.get_ui();
    std::uint64_t d = den.get_ui();
    return mulmod(n, powmod(d, p - 2, p), p);
}

void Scalar::promote_to(std::uint64_t p) {
    if (modulus_ == p) return;
    if (modulus_ != 0) {
        throw FieldMismatch("cannot mix GF(" + std::to_string(modulus_) + ") and GF(" +
                            std::to_string(p) + ")");
    }
    residue_ = reduce(value_, p);
    modulus_ = p;
    value_ = 0;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw DivisionByZero("inversion of zero");
    Scalar r = *this;
    if (modulus_ == 0) {
        r.value_ = 1 / value_;
        r.value_.canonicalize();
    } else {
        r.residue_ = powmod(residue_, modulus_ - 2, modulus_);
    }
    return r;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    if (modulus_ == 0) {
        r.value_ = -value_;
    } else if (residue_ != 0) {
        r.residue_ = modulus_ - residue_;
    }
    return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (modulus_ == 0 && o.modulus_ == 0) {
        value_ += o.value_;
        return *this;
    }
    if (o.modulus_ == 0) {
        Scalar t = o;
        t.promote_to(modulus_);
        return *this += t;
    }
    promote_to(o.modulus_);
    residue_ = (residue_ + o.residue_) % modulus_;
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
    if (modulus_ == 0 && o.modulus_ == 0) {
        value_ *= o.value_;
        return *this;
    }
    if (o.modulus_ == 0) {
        Scalar t = o;
        t.promote_to(modulus_);
        return *this *= t;
    }
    promote_to(o.modulus_);
    residue_ = mulmod(residue_, o.residue_, modulus_);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inv(); }

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.modulus_ == b.modulus_) {
        return a.modulus_ == 0 ? a.value_ == b.value_ : a.residue_ == b.residue_;
    }
    return (a - b).is_zero();
}

std::string Scalar::to_string() const {
    if (modulus_ != 0) return std::to_string(residue_) + " mod " + std::to_string(modulus_);
    return value_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar scalar_add(const Scalar& a, const Scalar& b) { return a + b; }
Scalar scalar_mul(const Scalar& a, const Scalar& b) { return a * b; }
Scalar scalar_neg(const Scalar& a) { return -a; }
Scalar scalar_inv(const Scalar& a) { return a.inv(); }

mpz_class integer_binomial(const mpz_class& m, unsigned long n) {
    mpz_class num = 1;
    for (unsigned long k = 0; k < n; ++k) num *= (m - k);
    mpz_class fact;
    mpz_fac_ui(fact.get_mpz_t(), n);
    mpz_class q;
    mpz_class r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), fact.get_mpz_t());
    if (r != 0) throw IntegralityViolation("binomial remainder is nonzero");
    return q;
}

long integer_binomial(long m, unsigned long n) {
    mpz_class v = integer_binomial(mpz_class(m), n);
    if (!v.fits_slong_p()) throw NotRational("binomial coefficient overflows long");
    return v.get_si();
}

}  // namespace chevsuper
