#include "doctest.h"

#include "chevsuper/errors.hpp"
#include "chevsuper/linalg.hpp"

using namespace chevsuper;

namespace {

Matrix<Scalar> from_rows(std::vector<std::vector<long>> rows) {
    Matrix<Scalar> m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = Scalar(rows[i][j]);
    }
    return m;
}

IntRows int_rows(std::vector<std::vector<long>> rows) {
    IntRows out;
    for (auto& r : rows) {
        IntVector v;
        for (long x : r) v.emplace_back(x);
        out.push_back(v);
    }
    return out;
}

IntRows mul(const IntRows& a, const IntRows& b) {
    IntRows out(a.size(), IntVector(b.front().size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < b.size(); ++k)
            for (std::size_t j = 0; j < b.front().size(); ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

}  // namespace

TEST_CASE("nullspace vectors are annihilated") {
    auto a = from_rows({{1, 2, 3}, {2, 4, 6}});
    auto ns = nullspace(a);
    CHECK(ns.size() == 2);
    for (const auto& v : ns) {
        Scalar s = a(0, 0) * v[0] + a(0, 1) * v[1] + a(0, 2) * v[2];
        CHECK(s.is_zero());
    }
    CHECK(rank(a) == 1);
}

TEST_CASE("inverse and solve") {
    auto a = from_rows({{2, 1}, {1, 1}});
    auto inv = inverse(a);
    CHECK(multiply(a, inv, Scalar(0)) == Matrix<Scalar>::identity(2, Scalar(0), Scalar(1)));
    auto x = solve(a, {Scalar(3), Scalar(2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Scalar(1));
    CHECK((*x)[1] == Scalar(1));
    CHECK_FALSE(solve(from_rows({{1, 1}, {1, 1}}), {Scalar(0), Scalar(1)}).has_value());
    CHECK_THROWS_AS(inverse(from_rows({{1, 2}, {2, 4}})), NotInvertible);
}

TEST_CASE("Smith form of a small matrix") {
    auto a = int_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    auto s = smith_form(a);
    REQUIRE(s.diagonal.size() == 3);
    CHECK(s.diagonal[0] == 2);
    CHECK(s.diagonal[1] == 6);
    CHECK(s.diagonal[2] == 12);
    auto d = mul(mul(s.left, a), s.right);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(d[i][j] == (i == j ? s.diagonal[i] : 0));
}

TEST_CASE("lattice membership") {
    std::vector<ScalarVector> gens{{Scalar(1, 2), Scalar(1, 2)}, {Scalar(1), Scalar(-1)}};
    auto lat = RationalLattice::span(gens, 2);
    CHECK(lat.full_rank());
    CHECK(lat.contains(ScalarVector{Scalar(1), Scalar(1)}));
    CHECK_FALSE(lat.contains(ScalarVector{Scalar(1), Scalar(0)}));
    CHECK_FALSE(lat.contains(ScalarVector{Scalar(1, 2), Scalar(0)}));
    auto sub = RationalLattice::span({{Scalar(2), Scalar(0)}, {Scalar(0), Scalar(2)}}, 2);
    CHECK(lat.contains(sub));
    CHECK_FALSE(sub.contains(lat));
    auto same = RationalLattice::span({{Scalar(3, 2), Scalar(-1, 2)}, {Scalar(1, 2), Scalar(1, 2)}}, 2);
    CHECK(same == lat);
}

TEST_CASE("hermite rows of dependent generators") {
    auto h = hermite_rows(int_rows({{2, 0}, {3, 0}, {0, 4}, {0, 6}}));
    REQUIRE(h.size() == 2);
    CHECK(h[0][0] == 1);
    CHECK(h[1][1] == 2);
}
