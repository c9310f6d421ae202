#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "chevsuper/scalar.hpp"

namespace chevsuper {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
    return static_cast<Parity>(static_cast<unsigned>(a) ^ static_cast<unsigned>(b));
}
inline int parity_bit(Parity p) { return static_cast<int>(p); }
inline const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

/// Bit i-1 set <=> generator theta_i occurs. Generators are 1-based in text.
using Monomial = std::uint64_t;

inline constexpr unsigned kMaxGenerators = 64;

/// Element of the Grassmann algebra Lambda(theta_1 ... theta_N) over Scalar.
///
/// Terms are kept sorted by monomial mask with zero coefficients removed, so
/// two elements are equal iff their term lists are equal.
class SuperScalar {
public:
    using Term = std::pair<Monomial, Scalar>;

    SuperScalar() = default;
    explicit SuperScalar(unsigned generators);
    SuperScalar(unsigned generators, const Scalar& constant);

    static SuperScalar zero(unsigned generators) { return SuperScalar(generators); }
    static SuperScalar one(unsigned generators) { return {generators, Scalar(1)}; }
    /// c * theta_index (index is 1-based).
    static SuperScalar generator(unsigned generators, unsigned index,
                                 const Scalar& c = Scalar(1));
    /// c * theta_{i1} ... theta_{ik} in the given order (sign applied).
    static SuperScalar monomial(unsigned generators, const std::vector<unsigned>& indices,
                                const Scalar& c = Scalar(1));
    /// Parses the textual form, e.g. "2 - 1/2*th1*th3 + th2".
    static SuperScalar parse(const std::string& text, unsigned generators);
    static SuperScalar from_json(const nlohmann::json& j, unsigned generators);

    unsigned generators() const { return generators_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    /// Coefficient of the empty monomial.
    Scalar body() const;
    Scalar coefficient(Monomial m) const;
    /// Parity when homogeneous; zero counts as even. nullopt for mixed elements.
    std::optional<Parity> parity() const;
    bool is_even() const { return parity() == Parity::Even; }
    bool is_odd() const;  // nonzero odd, or zero
    /// Smallest monomial degree present (0 for the zero element by convention).
    unsigned min_degree() const;
    /// Component of exactly this degree.
    SuperScalar degree_part(unsigned degree) const;
    /// Same element re-embedded with a different (larger) generator count.
    SuperScalar with_generators(unsigned generators) const;

    SuperScalar inv() const;
    SuperScalar pow(long exponent) const;

    SuperScalar operator-() const;
    SuperScalar& operator+=(const SuperScalar& o);
    SuperScalar& operator-=(const SuperScalar& o);
    SuperScalar& operator*=(const SuperScalar& o);
    SuperScalar& operator*=(const Scalar& c);

    friend SuperScalar operator+(SuperScalar a, const SuperScalar& b) { return a += b; }
    friend SuperScalar operator-(SuperScalar a, const SuperScalar& b) { return a -= b; }
    friend SuperScalar operator*(const SuperScalar& a, const SuperScalar& b);
    friend SuperScalar operator*(SuperScalar a, const Scalar& c) { return a *= c; }
    friend SuperScalar operator*(const Scalar& c, SuperScalar a) { return a *= c; }

    friend bool operator==(const SuperScalar& a, const SuperScalar& b);
    friend bool operator!=(const SuperScalar& a, const SuperScalar& b) { return !(a == b); }

    /// If *this == c * other for a scalar c, returns c.
    std::optional<Scalar> ratio_to(const SuperScalar& other) const;

    std::string to_string() const;
    nlohmann::json to_json() const;

private:
    void check_same(const SuperScalar& o) const;
    void normalize();

    unsigned generators_ = 0;
    std::vector<Term> terms_;
};

/// Sign (+1 or -1) of theta_a * theta_b for disjoint sorted monomials a, b.
int koszul_sign(Monomial a, Monomial b);
std::vector<unsigned> monomial_indices(Monomial m);  // 1-based, ascending

SuperScalar ss_mul(const SuperScalar& a, const SuperScalar& b);
Scalar ss_body(const SuperScalar& a);
SuperScalar ss_inv(const SuperScalar& a);
SuperScalar ss_pow_int(const SuperScalar& a, long m);

}  // namespace chevsuper
