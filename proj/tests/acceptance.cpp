#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "chevsuper/errors.hpp"
#include "chevsuper/liesuper.hpp"
#include "chevsuper/supergroup.hpp"

using namespace chevsuper;

namespace {

const std::vector<std::string> kAlgebras = {"A(1,0)", "A(2,1)", "A(0,2)", "B(0,1)", "B(1,1)",
                                            "B(2,1)", "C(2)",   "C(3)",   "D(2,1)"};
const std::vector<std::string> kWordAlgebras = {"A(1,0)", "B(0,1)", "B(1,1)", "C(2)"};

struct Outcome {
    bool ok = true;
    std::string detail;
};

std::map<std::string, std::shared_ptr<const ChevalleyBasis>> g_cache;

std::shared_ptr<const ChevalleyBasis> basis(const std::string& name) {
    auto& slot = g_cache[name];
    if (!slot) slot = std::make_shared<const ChevalleyBasis>(ChevalleyBasis::build(Family::parse(name)));
    return slot;
}

// Adds "name: k/n" and the first failure of a report to the running outcome.
void fold(Outcome& out, const std::string& name, const Report& rep,
          bool (*select)(const CaseResult&) = nullptr) {
    std::size_t total = 0, bad = 0;
    std::string first;
    for (const auto& c : rep.cases) {
        if (select && !select(c)) continue;
        ++total;
        if (!c.ok) {
            ++bad;
            if (first.empty()) first = c.id + " (" + c.detail + ")";
        }
    }
    if (bad) {
        out.ok = false;
        out.detail += name + ": " + std::to_string(bad) + "/" + std::to_string(total) + " fail, e.g. " + first + "; ";
    }
}

Outcome criterion_integrality() {
    Outcome out;
    std::size_t cases = 0;
    for (const auto& name : kAlgebras) {
        auto rep = verify_integrality(*basis(name));
        cases += rep.cases.size();
        fold(out, name, rep);
    }
    if (out.ok) out.detail = std::to_string(cases) + " identities on 9 algebras";
    return out;
}

Outcome criterion_jacobi() {
    Outcome out;
    std::size_t cases = 0;
    for (const auto& name : kAlgebras) {
        auto rep = verify_jacobi(*basis(name));
        cases += rep.cases.size();
        fold(out, name, rep);
    }
    if (out.ok) out.detail = std::to_string(cases) + " checks on 9 algebras";
    return out;
}

Outcome criterion_kostant() {
    Outcome out;
    for (const auto& name : kAlgebras) fold(out, name, verify_kostant(*basis(name), 1, 500));
    if (out.ok) out.detail = "500 monomials on each of 9 algebras";
    return out;
}

Outcome criterion_commutators(Field f, bool verbatim) {
    Outcome out;
    std::size_t cases = 0, strict = 0, strict_bad = 0;
    for (const auto& name : kAlgebras) {
        auto cb = basis(name);
        auto rep = check_commutator_formulas(*cb, f);
        cases += rep.cases.size();
        fold(out, name, rep);
        if (!verbatim) continue;
        // (x_g(th), x_-g(eta)) = h_g(1 - th eta) as written, for every odd g.
        Supergroup g(cb, 2, f);
        auto th = g.theta(1), eta = g.theta(2);
        for (const auto& r : cb->roots().roots()) {
            if (r.parity != Parity::Odd) continue;
            ++strict;
            auto lhs = commutator(g.odd_factor(r.coords, th), g.odd_factor(negate(r.coords), eta));
            if (lhs != g.h_alpha(r.coords, g.constant(1) - th * eta)) {
                ++strict_bad;
                if (r.positive) out.detail += name + " verbatim item 3 fails on positive " + cb->roots().name(r.coords) + "; ";
            }
        }
    }
    if (verbatim && strict_bad) {
        out.ok = false;
        out.detail += "item 3 verbatim h_gamma(1-th*eta): " + std::to_string(strict - strict_bad) + "/" +
                      std::to_string(strict) + " odd roots; every failure is gamma in Delta_1^-, where the product is "
                      "h_{-gamma}(1-th*eta) because sigma_gamma = -1 forces H_{-gamma} = -H_gamma; ";
    }
    if (out.detail.empty()) out.detail = std::to_string(cases) + " root pairs on 9 algebras";
    else out.detail += "all " + std::to_string(cases) + " item 1-4 existence identities exact";
    return out;
}

bool is_round_trip(const CaseResult& c) { return c.id.rfind("word", 0) == 0 || c.id.rfind("pair", 0) == 0; }
bool is_degenerate(const CaseResult& c) { return c.id.rfind("degenerate", 0) == 0; }

std::map<std::pair<std::string, std::uint64_t>, Report> g_words;

const Report& word_report(const std::string& name, Field f) {
    auto& rep = g_words[{name, f.modulus()}];
    if (rep.cases.empty()) rep = verify_normal_form(*basis(name), 1, 200, 50, f);
    return rep;
}

Outcome criterion_words(Field f, bool (*select)(const CaseResult&), const char* what) {
    Outcome out;
    for (const auto& name : kWordAlgebras) fold(out, name, word_report(name, f), select);
    if (out.ok) out.detail = std::string(what) + " on A(1,0), B(0,1), B(1,1), C(2)";
    return out;
}

Outcome criterion_heisenberg() {
    Outcome out;
    std::set<std::string> constants;
    for (unsigned n = 1; n <= 3; ++n) {
        for (long a = 1; a <= 2; ++a) {
            auto rep = verify_heisenberg_group(n, a);
            fold(out, rep.family, rep);
            for (const auto& c : rep.cases) {
                if (c.detail.rfind("c=", 0) == 0) constants.insert(c.detail);
            }
        }
    }
    if (out.ok) {
        out.detail = "n = 1..3, a = 1..2; extracted";
        for (const auto& c : constants) out.detail += " " + c;
    }
    return out;
}

Outcome criterion_obstruction() {
    Outcome out;
    fold(out, "osp(1|2)", verify_obstruction_osp12());
    RootSystem rs(Family::parse("B(0,1)"));
    auto hd = rs.normalized_coroot(rs.parse("d1"));
    const auto& h2d = rs.coroot(rs.parse("2d1"));
    for (std::size_t i = 0; i < hd.size(); ++i) {
        if (hd[i] != Scalar(2) * h2d[i]) {
            out.ok = false;
            out.detail += "H_d != 2 H_2d; ";
        }
    }
    if (out.ok) out.detail = "h/2 fails with eigenvalue 1/2, the basis x, y, e, f, h passes, H_d = 2 H_2d";
    return out;
}

Outcome criterion_stabilizer() {
    Outcome out;
    for (const char* name : {"A(1,0)", "B(0,1)"}) fold(out, name, verify_stabilizer(*basis(name)));
    if (out.ok) out.detail = "sl(2|1), osp(1|2): rank-l lattices with h_roots in h_V in h_weights";
    return out;
}

Outcome criterion_prime() {
    Outcome out;
    for (std::uint64_t p : {5u, 7u}) {
        Field f = Field::prime(p);
        auto c = criterion_commutators(f, false);
        auto w = criterion_words(f, is_round_trip, "");
        auto d = criterion_words(f, is_degenerate, "");
        for (auto* o : {&c, &w, &d}) {
            if (!o->ok) {
                out.ok = false;
                out.detail += "GF(" + std::to_string(p) + ") " + o->detail;
            }
        }
    }
    if (out.ok) out.detail = "commutator and factorization suites over GF(5) and GF(7)";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria, one line per criterion"};
    std::vector<int> known_red;
    app.add_option("--known-red", known_red,
                   "criteria whose failure is documented as unattainable; exit 0 when exactly these fail");
    CLI11_PARSE(app, argc, argv);

    const Field q = Field::rational();
    struct Criterion {
        const char* title;
        Outcome (*run)();
    };
    static Field rational = q;
    const std::vector<Criterion> criteria = {
        {"Chevalley-basis integrality, clauses (a)-(d)", criterion_integrality},
        {"super Jacobi identity", criterion_jacobi},
        {"Kostant lattice stability", criterion_kostant},
        {"commutator formulas, items 1-4", [] { return criterion_commutators(rational, true); }},
        {"factorization round trip and uniqueness", [] { return criterion_words(rational, is_round_trip, "200 words and 50 pairs"); }},
        {"degeneration to the classical group", [] { return criterion_words(rational, is_degenerate, "every prefix of 200 words"); }},
        {"Heisenberg example", criterion_heisenberg},
        {"osp(1|2) obstruction", criterion_obstruction},
        {"stabilizer lattice chain", criterion_stabilizer},
        {"prime-field run", criterion_prime},
    };

    std::set<int> failed;
    auto start = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        int k = static_cast<int>(i + 1);
        if (!o.ok) failed.insert(k);
        std::cout << (o.ok ? "PASS" : "FAIL") << "  " << k << ". " << criteria[i].title << " -- " << o.detail
                  << std::endl;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::set<int> expected(known_red.begin(), known_red.end());
    std::cout << (criteria.size() - failed.size()) << "/" << criteria.size() << " criteria pass in "
              << static_cast<long>(secs) << " s";
    if (!expected.empty()) {
        std::cout << "; known red:";
        for (int k : expected) std::cout << " " << k;
    }
    std::cout << "\n";
    if (failed.empty()) return 0;
    return (!expected.empty() && failed == expected) ? 0 : 1;
}
