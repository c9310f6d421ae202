#include "doctest.h"

#include "chevsuper/errors.hpp"
#include "chevsuper/supergroup.hpp"

using namespace chevsuper;

namespace {

std::shared_ptr<const ChevalleyBasis> basis(const char* name) {
    return std::make_shared<const ChevalleyBasis>(ChevalleyBasis::build(Family::parse(name)));
}

SuperScalar th(unsigned n, unsigned i) { return SuperScalar::generator(n, i); }
SuperScalar num(unsigned n, long c) { return {n, Scalar(c)}; }

// Matrix with entries given row by row (1-based positions).
GrassmannMatrix grid(unsigned gens, std::size_t dim,
                     std::vector<std::tuple<std::size_t, std::size_t, SuperScalar>> entries) {
    GrassmannMatrix m(dim, dim, SuperScalar::zero(gens));
    for (auto& [i, j, v] : entries) m(i - 1, j - 1) += v;
    return m;
}

GrassmannMatrix unit(unsigned gens, std::size_t dim) {
    return GrassmannMatrix::identity(dim, SuperScalar::zero(gens), SuperScalar::one(gens));
}

}  // namespace

TEST_CASE("osp(1|2) one-parameter subgroups") {
    Supergroup g(basis("B(0,1)"), 3, Field::rational());
    const auto& rs = g.roots();
    const unsigned n = 3;
    auto t = SuperScalar::monomial(n, {2, 3});
    // e = E23
    auto xe = g.x_even(rs.parse("2d1"), t);
    CHECK(xe.matrix() == unit(n, 3) + grid(n, 3, {{2, 3, t}}));
    CHECK(g.x_even(rs.parse("2d1"), SuperScalar::zero(n)).is_identity());

    // x = E13 + E21, x^2 = e; the odd row 2 carries the Koszul sign.
    auto theta = th(n, 1);
    auto one_theta_x = unit(n, 3) + grid(n, 3, {{1, 3, theta}, {2, 1, -theta}});
    auto exp_te = unit(n, 3) + grid(n, 3, {{2, 3, t}});
    auto want = multiply(one_theta_x, exp_te, SuperScalar::zero(n));
    CHECK(g.x_gamma(rs.parse("d1"), theta, t).matrix() == want);

    // weights (0, d1, -d1) against H_2d = E22 - E33
    auto u = num(n, 2) + t;
    auto h = g.h_alpha(rs.parse("2d1"), u);
    CHECK(h.matrix() == grid(n, 3, {{1, 1, num(n, 1)}, {2, 2, u}, {3, 3, u.inv()}}));

    CHECK_THROWS_AS(g.x_odd(rs.parse("d1"), theta), WrongConstructor);
    CHECK_THROWS_AS(g.x_even(rs.parse("2d1"), theta), ParityError);
    CHECK_THROWS_AS(g.x_even(rs.parse("d1"), t), ParityError);
    CHECK_THROWS_AS(g.h_alpha(rs.parse("d1"), t), NotInvertible);
}

TEST_CASE("composition laws") {
    Supergroup g(basis("B(0,1)"), 4, Field::rational());
    const auto& rs = g.roots();
    auto d = rs.parse("d1");
    auto a = th(4, 1), b = th(4, 2);
    auto t = SuperScalar::monomial(4, {3, 4}), u = num(4, 3);
    CHECK(g.x_gamma(d, a, t) * g.x_gamma(d, b, u) == g.x_gamma(d, a + b, t + u - a * b));
    CHECK(verify_group_laws(*basis("A(2,1)")).passed());
    CHECK(verify_group_laws(*basis("B(1,1)")).passed());
}

TEST_CASE("group element inverse and validation") {
    Supergroup g(basis("A(1,0)"), 2, Field::rational());
    auto beta = g.roots().parse("e1-d1");
    auto x = g.x_odd(beta, th(2, 1));
    CHECK(x.inv() == g.x_odd(beta, -th(2, 1)));
    CHECK(g.identity().inv().is_identity());
    CHECK((x * x.inv()).is_identity());
    BlockShape sh{2, 1};
    CHECK_THROWS_AS(GroupElement(sh, unit(2, 3) + grid(2, 3, {{1, 2, th(2, 1)}})), ParityError);
    CHECK_THROWS_AS(GroupElement(sh, grid(2, 3, {{1, 1, num(2, 1)}, {2, 2, num(2, 1)}})), NotInvertible);
}

TEST_CASE("odd commutators in osp(1|2) and sl(2|1)") {
    Supergroup g(basis("B(0,1)"), 2, Field::rational());
    const auto& rs = g.roots();
    auto theta = th(2, 1), eta = th(2, 2);
    auto c = commutator(g.odd_factor(rs.parse("d1"), theta), g.odd_factor(rs.parse("-d1"), eta));
    // H_d = h = E22 - E33
    auto te = theta * eta;
    CHECK(c.matrix() == unit(2, 3) - grid(2, 3, {{2, 2, te}, {3, 3, -te}}));
    CHECK(c == g.h_alpha(rs.parse("d1"), num(2, 1) - te));

    Supergroup a(basis("A(1,0)"), 2, Field::rational());
    const auto& ra = a.roots();
    auto gam = ra.parse("e1-d1"), del = ra.parse("d1-e2");
    auto cm = commutator(a.x_odd(gam, theta), a.x_odd(del, eta));
    auto br = super_bracket(a.x(gam), a.x(del));
    auto cst = br.ratio_to(a.x(ra.parse("e1-e2")));
    REQUIRE(cst);
    CHECK(cm == a.x_even(ra.parse("e1-e2"), -(*cst * te)));
    // e1-d1 and e2-d1 do not add to a root
    CHECK(commutator(a.x_odd(gam, theta), a.x_odd(ra.parse("e2-d1"), eta)).is_identity());
}

TEST_CASE("commutator formulas, items 1 to 4") {
    for (const char* name : {"A(1,0)", "B(0,1)", "B(1,1)", "C(2)"}) {
        auto rep = check_commutator_formulas(*basis(name), Field::rational());
        INFO(name);
        for (const auto& c : rep.cases) {
            INFO(c.id << " " << c.detail);
            CHECK(c.ok);
        }
    }
    auto rep = check_commutator_formulas(*basis("A(1,0)"), Field::rational());
    bool seen = false;
    for (const auto& c : rep.cases) {
        if (c.id == "item4 e1-e2,e1-d1") {
            seen = true;
            CHECK(c.detail == "beta(H_alpha)=1");
        }
    }
    CHECK(seen);
}

TEST_CASE("normal form of a swapped odd pair") {
    Supergroup g(basis("A(1,0)"), 2, Field::rational());
    const auto& rs = g.roots();
    auto beta = rs.parse("e1-d1");
    auto eta = th(2, 1), theta = th(2, 2);
    GeneratorWord w = {{FactorKind::OddRoot, beta, eta, SuperScalar::zero(2)},
                       {FactorKind::OddRoot, negate(beta), theta, SuperScalar::zero(2)}};
    auto nf = normal_form(g, w);
    // H_beta = E11 + E33
    auto et = eta * theta;
    CHECK(nf.g0.matrix() == unit(2, 3) - grid(2, 3, {{1, 1, et}, {3, 3, et}}));
    REQUIRE(nf.neg.size() == 1);
    REQUIRE(nf.pos.size() == 1);
    CHECK(nf.neg[0].root == negate(beta));
    CHECK(nf.neg[0].theta == theta);
    CHECK(nf.pos[0].root == beta);
    CHECK(nf.pos[0].theta == eta);
    CHECK(reconstruct(g, nf) == eval_word(g, w));

    // already ordered: nothing to do
    std::swap(w[0], w[1]);
    auto nf2 = normal_form(g, w);
    CHECK(nf2.g0.is_identity());
    CHECK(nf2.neg.size() == 1);
    CHECK(nf2.pos.size() == 1);
}

TEST_CASE("purely even words stay in G0") {
    auto cb = basis("C(2)");
    Supergroup g(cb, 4, Field::rational());
    auto w = parse_word(g, "xe:2d1:1+th1*th2 h:e1-d1:2 xe:-2d1:-1 xo:e1-d1:0");
    auto nf = normal_form(g, w);
    CHECK(nf.neg.empty());
    CHECK(nf.pos.empty());
    CHECK(nf.g0 == eval_word(g, w));
    CHECK(nf.g0.is_block_diagonal());
}

TEST_CASE("words: parsing, inverses and uniqueness") {
    Supergroup g(basis("B(1,1)"), 12, Field::rational());
    auto w = parse_word(g, "xg:d1:th1:th2*th3 xo:e1-d1:th4 h:e1:2 xe:e1:-1 xo:-e1-d1:th5");
    REQUIRE(w.size() == 5);
    CHECK(parse_word(g, word_to_string(g, w)).size() == 5);
    CHECK(eval_word(g, parse_word(g, word_to_string(g, w))) == eval_word(g, w));
    CHECK((eval_word(g, w) * eval_word(g, inverse_word(g, w))).is_identity());
    CHECK(eval_word(g, {}).is_identity());
    CHECK(uniqueness_probe(g, w, w));
    auto w2 = w;
    w2.insert(w2.begin() + 2, {FactorKind::Torus, g.roots().parse("d1"), SuperScalar::zero(12), num(12, 1)});
    CHECK(uniqueness_probe(g, w, w2));
    CHECK(reconstruct(g, normal_form(g, w)) == eval_word(g, w));
    CHECK_THROWS_AS(parse_word(g, "xq:e1:1"), ParseError);
    CHECK_THROWS_AS(parse_word(g, "xo:d1:th1"), WrongConstructor);
    CHECK_THROWS_AS(parse_word(g, "xe:e1:th1"), ParityError);
    CHECK(word_generator_count("xo:e1-d1:th4 xe:e1:th2*th11") == 11);
}

TEST_CASE("normal form json") {
    Supergroup g(basis("A(1,0)"), 2, Field::rational());
    auto nf = normal_form(g, parse_word(g, "xo:e1-d1:th1 xo:d1-e1:th2"));
    auto j = normal_form_json(g, nf);
    CHECK(j["g0"].size() == 3);
    CHECK(j["neg"].size() == 1);
    CHECK(j["pos"][0]["root"] == "e1-d1");
    CHECK(j["pos"][0]["theta"] == "th1");
}

TEST_CASE("odd root order puts negative roots first") {
    CHECK(odd_root_less({-1, 0, 1}, {0, 1, -1}));
    CHECK(odd_root_less({0, -1, 1}, {1, 0, -1}));
    CHECK_FALSE(odd_root_less({1, 0, -1}, {-1, 0, 1}));
    CHECK(odd_root_less({0, 1, -1}, {1, 0, -1}));
}

TEST_CASE("random words round trip") {
    for (const char* name : {"A(1,0)", "B(0,1)", "C(2)"}) {
        auto rep = verify_normal_form(*basis(name), 3, 25, 10, Field::rational());
        INFO(name);
        for (const auto& c : rep.cases) {
            INFO(c.id << " " << c.detail);
            CHECK(c.ok);
        }
    }
}

TEST_CASE("prime fields") {
    for (long p : {5, 7}) {
        auto f = Field::prime(static_cast<std::uint64_t>(p));
        auto cb = basis("B(0,1)");
        CHECK(check_commutator_formulas(*cb, f).passed());
        CHECK(verify_normal_form(*cb, 1, 20, 5, f).passed());
        Supergroup g(cb, 2, f);
        auto h = g.h_alpha(g.roots().parse("2d1"), g.constant(2));
        CHECK(h(1, 1).body() == Scalar::in(f, 2));
        CHECK(h(2, 2).body() == Scalar::in(f, 2).inv());
        CHECK(h(2, 2).body().modulus() == static_cast<std::uint64_t>(p));
    }
}

TEST_CASE("Heisenberg group commutator") {
    for (unsigned n = 1; n <= 3; ++n) {
        for (long a = 1; a <= 2; ++a) {
            auto rep = verify_heisenberg_group(n, a);
            for (const auto& c : rep.cases) {
                INFO(c.id << " " << c.detail);
                CHECK(c.ok);
                if (c.id.rfind("group commutator a1,b1", 0) == 0) CHECK(c.detail == "c=-1");
            }
        }
    }
}
