#include "doctest.h"

#include <set>

#include "chevsuper/errors.hpp"
#include "chevsuper/rootdata.hpp"

using namespace chevsuper;

namespace {

std::vector<Scalar> diag(std::vector<long> d) {
    std::vector<Scalar> out;
    for (long x : d) out.emplace_back(x);
    return out;
}

const std::vector<std::string> kTargets = {"A(1,0)", "A(2,1)", "A(0,2)", "B(0,1)", "B(1,1)",
                                           "B(2,1)", "C(2)",   "C(3)",   "D(2,1)"};

}  // namespace

TEST_CASE("family parsing and bounds") {
    CHECK(Family::parse("A(1,0)").name() == "A(1,0)");
    CHECK(Family::parse(" C( 3 ) ").name() == "C(3)");
    CHECK(Family::parse("D(2,1)").kind == FamilyKind::D);
    CHECK_THROWS_AS(Family::parse("A(1,1)"), InvalidFamily);
    CHECK_THROWS_AS(Family::parse("A(0,0)"), InvalidFamily);
    CHECK_THROWS_AS(Family::parse("B(1,0)"), InvalidFamily);
    CHECK_THROWS_AS(Family::parse("C(1)"), InvalidFamily);
    CHECK_THROWS_AS(Family::parse("D(1,1)"), InvalidFamily);
    CHECK_THROWS_AS(Family::parse("E(6)"), InvalidFamily);
}

TEST_CASE("weight names round trip") {
    CHECK(weight_name({1, 0, -1}, 2) == "e1-d1");
    CHECK(weight_name({0, 2}, 1) == "2d1");
    CHECK(weight_name({0, -1}, 1) == "-d1");
    CHECK(weight_name({0, 0}, 1) == "0");
    CHECK(parse_weight("e1-d1", 2, 1) == Weight{1, 0, -1});
    CHECK(parse_weight("-2d1", 1, 1) == Weight{0, -2});
    CHECK_THROWS_AS(parse_weight("x3", 1, 1), ParseError);
}

TEST_CASE("osp(1|2) has roots +-d1 odd and +-2d1 even") {
    RootSystem rs(Family::parse("B(0,1)"));
    std::set<std::pair<Weight, Parity>> got;
    for (const auto& r : rs.roots()) got.insert({r.coords, r.parity});
    std::set<std::pair<Weight, Parity>> want = {
        {{1}, Parity::Odd}, {{-1}, Parity::Odd}, {{2}, Parity::Even}, {{-2}, Parity::Even}};
    CHECK(got == want);
}

TEST_CASE("sl(2|1) roots agree with the off-diagonal weights") {
    RootSystem rs(Family::parse("A(1,0)"));
    // Weights of E_ij on k^{2|1}: e1, e2, d1; parity of (i,j) is |i|+|j|.
    std::vector<Weight> w = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    std::vector<int> par = {0, 0, 1};
    std::set<std::pair<Weight, Parity>> want;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            Weight d{w[i][0] - w[j][0], w[i][1] - w[j][1], w[i][2] - w[j][2]};
            want.insert({d, (par[i] + par[j]) % 2 ? Parity::Odd : Parity::Even});
        }
    }
    std::set<std::pair<Weight, Parity>> got;
    std::size_t even = 0, odd = 0;
    for (const auto& r : rs.roots()) {
        got.insert({r.coords, r.parity});
        (r.parity == Parity::Even ? even : odd)++;
    }
    CHECK(got == want);
    CHECK(even == 2);
    CHECK(odd == 4);
}

TEST_CASE("alpha strings") {
    RootSystem a(Family::parse("A(1,0)"));
    CHECK(a.alpha_string_length(a.parse("e1-d1"), a.parse("d1-e2")) == 0);
    RootSystem b(Family::parse("B(0,1)"));
    CHECK(b.alpha_string_length(b.parse("d1"), b.parse("d1")) == 1);
    RootSystem c(Family::parse("C(3)"));
    // Long root 2d1 through d2-d1: d2-3d1 is not a root.
    CHECK(c.alpha_string_length(c.parse("2d1"), c.parse("d2-d1")) == 0);
    CHECK(c.alpha_string_length(c.parse("d1-d2"), c.parse("2d2")) == 0);
    CHECK(c.alpha_string_length(c.parse("d1-d2"), c.parse("d1+d2")) == 1);
    CHECK_THROWS_AS(a.alpha_string_length(a.parse("e1-d1"), Weight{3, 0, 0}), NotARoot);
}

TEST_CASE("coroots of sl(2|1)") {
    RootSystem rs(Family::parse("A(1,0)"));
    CHECK(rs.coroot(rs.parse("e1-e2")) == diag({1, -1, 0}));
    CHECK(rs.coroot(rs.parse("e2-d1")) == diag({0, 1, 1}));
    CHECK(rs.coroot(rs.parse("d1-e2")) == diag({0, -1, -1}));
    CHECK(rs.sigma(rs.parse("d1-e2")) == -1);
    CHECK(rs.sigma(rs.parse("e2-d1")) == 1);
    CHECK(rs.sigma(rs.parse("e2-e1")) == 1);
    REQUIRE(rs.cartan_basis().size() == 2);
    CHECK(rs.cartan_basis()[0] == diag({1, -1, 0}));
    CHECK(rs.cartan_basis()[1] == diag({0, 1, 1}));
}

TEST_CASE("osp(1|2) normalized coroot is twice H_2d") {
    RootSystem rs(Family::parse("B(0,1)"));
    auto hd = rs.normalized_coroot(rs.parse("d1"));
    auto h2d = rs.coroot(rs.parse("2d1"));
    REQUIRE(hd.size() == h2d.size());
    for (std::size_t i = 0; i < hd.size(); ++i) CHECK(hd[i] == Scalar(2) * h2d[i]);
    CHECK(rs.coroot(rs.parse("d1")) == h2d);
}

TEST_CASE("structural properties hold on all target algebras") {
    for (const auto& name : kTargets) {
        RootSystem rs(Family::parse(name));
        for (const auto& p : rs.check_properties()) {
            INFO(name << " " << p.name << " " << p.detail);
            CHECK(p.ok);
        }
        std::size_t odd = 0;
        for (const auto& r : rs.roots()) {
            odd += r.parity == Parity::Odd ? 1 : 0;
            CHECK(rs.contains(negate(r.coords)));
            CHECK(r.positive == is_positive(r.coords));
        }
        CHECK(odd % 2 == 0);
        CHECK(rs.n_plus() == rs.n_minus());
    }
}

TEST_CASE("root counts match the dimensions of the algebras") {
    // dim sl(m|n) = (m+n)^2 - 1, dim osp(p|2n) = p(p-1)/2 + n(2n+1) + 2pn.
    auto osp_dim = [](long p, long n) { return p * (p - 1) / 2 + n * (2 * n + 1) + 2 * p * n; };
    struct Case {
        const char* name;
        long dim;
    };
    for (auto c : {Case{"A(1,0)", 8}, Case{"A(2,1)", 24}, Case{"A(0,2)", 15},
                   Case{"B(0,1)", osp_dim(1, 1)}, Case{"B(1,1)", osp_dim(3, 1)},
                   Case{"B(2,1)", osp_dim(5, 1)}, Case{"C(3)", osp_dim(2, 2)},
                   Case{"D(2,1)", osp_dim(4, 1)}}) {
        RootSystem rs(Family::parse(c.name));
        INFO(c.name);
        CHECK(static_cast<long>(rs.roots().size() + rs.rank()) == c.dim);
    }
}

TEST_CASE("simple roots of the distinguished system") {
    RootSystem rs(Family::parse("B(1,1)"));
    std::set<Weight> simple;
    for (const auto& r : rs.simple_roots()) simple.insert(r.coords);
    CHECK(simple == std::set<Weight>{{1, -1}, {0, 1}});
    RootSystem a(Family::parse("A(2,1)"));
    CHECK(a.simple_roots().size() == 4);
}

TEST_CASE("roots json") {
    RootSystem rs(Family::parse("B(0,1)"));
    auto j = rs.to_json();
    CHECK(j["family"] == "B(0,1)");
    CHECK(j["roots"].size() == 4);
    CHECK(j.contains("coroots"));
    CHECK(j.contains("form"));
}
