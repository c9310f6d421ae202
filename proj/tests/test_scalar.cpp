#include "doctest.h"

#include "chevsuper/errors.hpp"
#include "chevsuper/scalar.hpp"

using namespace chevsuper;

TEST_CASE("rational arithmetic is exact and reduced") {
    Scalar a(1, 3);
    Scalar b(1, 6);
    CHECK((a + b) == Scalar(1, 2));
    CHECK((a * b).to_string() == "1/18");
    CHECK((a - a).is_zero());
    CHECK(Scalar(4, 2).is_integer());
    CHECK(Scalar(-6, 4).to_string() == "-3/2");
    CHECK(Scalar(-6, 4).sign() == -1);
    CHECK_THROWS_AS(Scalar(0).inv(), DivisionByZero);
    CHECK_THROWS_AS(Scalar(1, 2).to_long(), NotRational);
}

TEST_CASE("prime field arithmetic") {
    Field f5 = Field::prime(5);
    Scalar two = Scalar::in(f5, 2);
    CHECK(two.inv() == Scalar::in(f5, 3));
    CHECK((two * Scalar::in(f5, 3)).is_one());
    CHECK(Scalar::in(f5, -1).residue() == 4);
    CHECK(Scalar::in(f5, mpq_class(1, 2)) == Scalar::in(f5, 3));
    // Rationals promote into GF(p).
    CHECK((two + Scalar(3)).is_zero());
    CHECK(two.to_string() == "2 mod 5");
    CHECK_THROWS_AS(Scalar::in(f5, 0).inv(), DivisionByZero);
    CHECK_THROWS_AS(two + Scalar::in(Field::prime(7), 1), FieldMismatch);
}

TEST_CASE("field validation") {
    CHECK_THROWS_AS(Field::prime(3), InvalidField);
    CHECK_THROWS_AS(Field::prime(2), InvalidField);
    CHECK_THROWS_AS(Field::prime(9), InvalidField);
    CHECK_THROWS_AS(Field::prime(2147483659ULL), InvalidField);
    CHECK(Field::prime(2147483647ULL).modulus() == 2147483647ULL);
    CHECK(Field::parse("mod:7").modulus() == 7);
    CHECK(Field::parse("rational").is_rational());
    CHECK_THROWS_AS(Field::parse("mod:x"), InvalidField);
}

TEST_CASE("large modulus multiplication does not overflow") {
    Field f = Field::prime(2147483647ULL);
    Scalar x = Scalar::in(f, 2147483646L);
    CHECK((x * x).is_one());
}

TEST_CASE("parse round trips") {
    CHECK(Scalar::parse("-7/21") == Scalar(-1, 3));
    CHECK(Scalar::parse("3 mod 7") == Scalar::in(Field::prime(7), 3));
    CHECK_THROWS_AS(Scalar::parse("abc"), ParseError);
}

TEST_CASE("integer binomials for negative tops") {
    CHECK(integer_binomial(5L, 2) == 10);
    CHECK(integer_binomial(-1L, 3) == -1);
    CHECK(integer_binomial(-2L, 2) == 3);
    CHECK(integer_binomial(3L, 5) == 0);
    CHECK(integer_binomial(7L, 0) == 1);
}
