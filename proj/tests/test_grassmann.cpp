#include "doctest.h"

#include <random>

#include "chevsuper/errors.hpp"
#include "chevsuper/grassmann.hpp"

using namespace chevsuper;

namespace {

// Oracle: sign of sorting a word of distinct generator indices by bubble sort.
int permutation_sign(std::vector<unsigned> w) {
    int s = 1;
    for (std::size_t i = 0; i < w.size(); ++i) {
        for (std::size_t j = 0; j + 1 < w.size() - i; ++j) {
            if (w[j] > w[j + 1]) {
                std::swap(w[j], w[j + 1]);
                s = -s;
            }
        }
    }
    return s;
}

SuperScalar random_element(std::mt19937& rng, unsigned n) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<Monomial> mono(0, (Monomial(1) << n) - 1);
    SuperScalar x(n);
    for (int k = 0; k < 4; ++k) {
        auto m = mono(rng);
        x += SuperScalar::monomial(n, monomial_indices(m), Scalar(coeff(rng)));
    }
    return x;
}

}  // namespace

TEST_CASE("generators anticommute and square to zero") {
    auto t1 = SuperScalar::generator(3, 1);
    auto t2 = SuperScalar::generator(3, 2);
    CHECK((t1 * t2 + t2 * t1).is_zero());
    CHECK((t1 * t1).is_zero());
    CHECK((t1 * t2).to_string() == "th1*th2");
    CHECK((t2 * t1).to_string() == "-th1*th2");
}

TEST_CASE("monomial signs match permutation parity") {
    std::vector<unsigned> w{3, 1, 4, 2};
    auto m = SuperScalar::monomial(5, w);
    CHECK(m.coefficient(0b1111) == Scalar(permutation_sign(w)));
    CHECK(SuperScalar::monomial(5, {2, 2}).is_zero());
}

TEST_CASE("associativity and supercommutativity on random elements") {
    std::mt19937 rng(7);
    const unsigned n = 5;
    for (int it = 0; it < 50; ++it) {
        auto a = random_element(rng, n);
        auto b = random_element(rng, n);
        auto c = random_element(rng, n);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        auto ae = a.degree_part(0) + a.degree_part(2) + a.degree_part(4);
        auto bo = b.degree_part(1) + b.degree_part(3) + b.degree_part(5);
        CHECK(ae * bo == bo * ae);
        auto ao = a.degree_part(1) + a.degree_part(3);
        CHECK(ao * bo == -(bo * ao));
    }
}

TEST_CASE("inverse of units") {
    std::mt19937 rng(11);
    const unsigned n = 4;
    for (int it = 0; it < 30; ++it) {
        auto a = random_element(rng, n);
        auto even = SuperScalar(n, Scalar(2)) + a.degree_part(2) + a.degree_part(4);
        auto inv = even.inv();
        CHECK((even * inv).is_one());
        CHECK((inv * even).is_one());
        CHECK(even.pow(-3) * even.pow(3) == SuperScalar::one(n));
    }
    CHECK_THROWS_AS(SuperScalar::generator(2, 1).inv(), NotInvertible);
    auto mixed = SuperScalar::one(2) + SuperScalar::generator(2, 1);
    CHECK_THROWS_AS(mixed.inv(), NotInvertible);
}

TEST_CASE("parity classification") {
    auto t1 = SuperScalar::generator(3, 1);
    auto t2 = SuperScalar::generator(3, 2);
    CHECK(t1.parity() == Parity::Odd);
    CHECK((t1 * t2).parity() == Parity::Even);
    CHECK_FALSE((t1 + t1 * t2).parity().has_value());
    CHECK(SuperScalar::zero(3).is_even());
    CHECK(SuperScalar::zero(3).is_odd());
}

TEST_CASE("generator count mismatch") {
    CHECK_THROWS_AS(SuperScalar::one(2) + SuperScalar::one(3), GeneratorMismatch);
    CHECK(SuperScalar::generator(2, 1).with_generators(4) == SuperScalar::generator(4, 1));
}

TEST_CASE("text and json round trips") {
    auto x = SuperScalar::parse("3 - 1/2*th1*th3 + th2", 3);
    CHECK(x.body() == Scalar(3));
    CHECK(x.coefficient(0b101) == Scalar(-1, 2));
    CHECK(SuperScalar::parse(x.to_string(), 3) == x);
    CHECK(SuperScalar::from_json(x.to_json(), 3) == x);
    CHECK(SuperScalar::parse("th2*th1", 2) == -SuperScalar::parse("th1*th2", 2));
    CHECK_THROWS_AS(SuperScalar::parse("th9", 2), GeneratorMismatch);
    CHECK_THROWS_AS(SuperScalar::parse("2*", 2), ParseError);
}

TEST_CASE("ratio detection") {
    auto a = SuperScalar::parse("2*th1 + 4*th2*th3", 3);
    auto b = SuperScalar::parse("th1 + 2*th2*th3", 3);
    auto r = a.ratio_to(b);
    REQUIRE(r.has_value());
    CHECK(*r == Scalar(2));
    CHECK_FALSE(a.ratio_to(SuperScalar::parse("th1", 3)).has_value());
}

TEST_CASE("prime field coefficients") {
    Field f = Field::prime(5);
    auto x = SuperScalar::generator(2, 1, Scalar::in(f, 3));
    auto y = x * SuperScalar::generator(2, 2, Scalar::in(f, 2));
    CHECK(y.coefficient(0b11).is_one());
}
