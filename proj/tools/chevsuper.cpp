#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "chevsuper/errors.hpp"
#include "chevsuper/liesuper.hpp"
#include "chevsuper/supergroup.hpp"

using namespace chevsuper;

namespace {

constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string family;
    std::string format = "json";
    std::string suite = "all";
    std::string field;
    std::string word;
    std::uint64_t seed = 1;
    std::size_t words = 200;
    std::size_t pairs = 50;
    std::size_t monomials = 500;
    unsigned n = 1;
    long a = 1;
};

Family family_of(const Options& o) {
    try {
        return Family::parse(o.family);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

Field field_of(const Options& o) {
    if (o.field.empty()) return default_field();
    try {
        return Field::parse(o.field);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
}

void print(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

std::string coords_text(const Weight& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) s += (i ? " " : "") + std::to_string(w[i]);
    return s;
}

int cmd_roots(const Options& o) {
    RootSystem rs(family_of(o));
    if (o.format == "json") {
        print(rs.to_json());
    } else if (o.format == "csv") {
        std::cout << "root,parity,positive,isotropic,coords\n";
        for (const auto& r : rs.roots()) {
            std::cout << rs.name(r.coords) << "," << to_string(r.parity) << "," << (r.positive ? 1 : 0) << ","
                      << (r.parity == Parity::Odd && rs.is_isotropic(r.coords) ? 1 : 0) << ","
                      << coords_text(r.coords) << "\n";
        }
    } else {
        std::cout << rs.family().name() << ": rank " << rs.rank() << ", " << rs.roots().size() << " roots\n";
        for (const auto& r : rs.roots()) {
            std::cout << "  " << rs.name(r.coords) << "  " << to_string(r.parity) << (r.positive ? "  +" : "  -")
                      << "\n";
        }
    }
    return 0;
}

int cmd_basis(const Options& o) {
    auto cb = ChevalleyBasis::build(family_of(o));
    if (o.format == "text") {
        auto labels = cb.labels();
        auto basis = cb.basis();
        for (std::size_t i = 0; i < basis.size(); ++i) std::cout << labels[i] << "\n" << basis[i].to_string();
    } else {
        print(cb.to_json());
    }
    return 0;
}

int cmd_constants(const Options& o) {
    auto cb = ChevalleyBasis::build(family_of(o));
    auto table = structure_constants(cb);
    if (o.format == "csv") std::cout << structure_constants_csv(cb, table);
    else print(structure_constants_json(cb, table));
    return 0;
}

Report run_suite(const std::string& suite, const ChevalleyBasis& cb, const Options& o, Field f) {
    if (suite == "jacobi") return verify_jacobi(cb);
    if (suite == "integrality") return verify_integrality(cb);
    if (suite == "commutators") return check_commutator_formulas(cb, f);
    if (suite == "normalform") return verify_normal_form(cb, o.seed, o.words, o.pairs, f);
    if (suite == "kostant") return verify_kostant(cb, o.seed, o.monomials);
    if (suite == "stabilizer") return verify_stabilizer(cb);
    if (suite == "grouplaws") return verify_group_laws(cb, f);
    throw UsageError("unknown suite " + suite);
}

int cmd_verify(const Options& o) {
    auto cb = ChevalleyBasis::build(family_of(o));
    Field f = field_of(o);
    std::vector<std::string> suites;
    if (o.suite == "all") {
        suites = {"jacobi", "integrality", "commutators", "normalform", "kostant", "stabilizer", "grouplaws"};
    } else {
        suites = {o.suite};
    }
    bool passed = true;
    auto reports = nlohmann::json::array();
    std::ostringstream text;
    for (const auto& s : suites) {
        auto rep = run_suite(s, cb, o, f);
        passed = passed && rep.passed();
        reports.push_back(rep.to_json());
        text << s << ": " << (rep.cases.size() - rep.failures()) << "/" << rep.cases.size() << " pass\n";
        for (const auto& c : rep.cases) {
            if (!c.ok) text << "  FAIL " << c.id << "  " << c.detail << "\n";
        }
    }
    if (o.format == "text") {
        std::cout << text.str();
    } else {
        print({{"family", cb.family().name()},
               {"field", f.name()},
               {"seed", o.seed},
               {"status", passed ? "pass" : "fail"},
               {"reports", reports}});
    }
    return passed ? 0 : 1;
}

int cmd_normalform(const Options& o) {
    auto cb = std::make_shared<const ChevalleyBasis>(ChevalleyBasis::build(family_of(o)));
    unsigned gens = std::max(word_generator_count(o.word), 1u);
    Supergroup g(cb, gens, field_of(o));
    GeneratorWord w;
    try {
        w = parse_word(g, o.word);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    } catch (const NotARoot& e) {
        throw UsageError(e.what());
    }
    auto nf = normal_form(g, w);
    bool round = reconstruct(g, nf) == eval_word(g, w);
    auto j = normal_form_json(g, nf);
    j["family"] = cb->family().name();
    j["word"] = word_to_string(g, w);
    j["round_trip"] = round;
    print(j);
    return round ? 0 : 1;
}

int cmd_heisenberg(const Options& o) {
    if (o.n == 0) throw UsageError("n must be positive");
    auto h = heisenberg_build(o.n, o.a);
    auto rep = verify_heisenberg_group(o.n, o.a);
    auto j = heisenberg_json(h);
    j["report"] = rep.to_json();
    print(j);
    return rep.passed() ? 0 : 1;
}

nlohmann::json lattice_json(const std::vector<std::vector<Scalar>>& basis) {
    auto arr = nlohmann::json::array();
    for (const auto& d : basis) arr.push_back(diag_json(d));
    return arr;
}

int cmd_lattice(const Options& o) {
    auto cb = ChevalleyBasis::build(family_of(o));
    const auto& rs = cb.roots();
    std::vector<Weight> roots;
    for (const auto& r : rs.roots()) roots.push_back(r.coords);
    auto rep = verify_stabilizer(cb);
    print({{"family", rs.family().name()},
           {"h_roots", lattice_json(rs.cartan_basis())},
           {"h_V", lattice_json(stabilizer_cartan(rs, rs.realization().weights()))},
           {"h_weights", lattice_json(stabilizer_cartan(rs, roots))},
           {"report", rep.to_json()}});
    return rep.passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chevalley bases, Kostant forms and Chevalley supergroups of classical Lie superalgebras"};
    app.require_subcommand(1);
    Options o;
    auto family_cmd = [&](const std::string& name, const std::string& help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("family", o.family, "e.g. A(2,1), B(0,1), C(3), D(2,1)")->required();
        return c;
    };
    auto* roots = family_cmd("roots", "root system");
    roots->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv", "text"}));
    auto* basis = family_cmd("basis", "Chevalley basis matrices");
    basis->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
    auto* constants = family_cmd("constants", "structure constants c_{alpha,beta}");
    constants->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));
    auto* verify = family_cmd("verify", "run verification suites");
    verify->add_option("--suite", o.suite)
        ->check(CLI::IsMember({"jacobi", "integrality", "commutators", "normalform", "kostant", "stabilizer",
                               "grouplaws", "all"}));
    verify->add_option("--seed", o.seed, "seed for random words and PBW monomials");
    verify->add_option("--words", o.words, "random words for the normal form suite");
    verify->add_option("--pairs", o.pairs, "equal-valued word pairs for the uniqueness probe");
    verify->add_option("--monomials", o.monomials, "random PBW monomials for the Kostant suite");
    verify->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
    verify->add_option("--field", o.field, "rational or mod:<p>");
    auto* nf = family_cmd("normalform", "normal form of a generator word");
    nf->add_option("--word", o.word, "e.g. \"xo:e1-d1:th1 xe:e1-e2:1+th2*th3\"")->required();
    nf->add_option("--field", o.field, "rational or mod:<p>");
    auto* heis = app.add_subcommand("heisenberg", "Heisenberg superalgebra in its Fock representation");
    heis->add_option("--n", o.n, "number of odd pairs")->check(CLI::PositiveNumber);
    heis->add_option("-a,--a", o.a, "central character");
    family_cmd("lattice", "Cartan lattices h_roots, h_V, h_weights");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kUsage;
    }
    try {
        auto* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        if (name == "roots") return cmd_roots(o);
        if (name == "basis") return cmd_basis(o);
        if (name == "constants") return cmd_constants(o);
        if (name == "verify") return cmd_verify(o);
        if (name == "normalform") return cmd_normalform(o);
        if (name == "heisenberg") return cmd_heisenberg(o);
        if (name == "lattice") return cmd_lattice(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidField& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        nlohmann::json j{{"status", "error"}, {"error", e.what()}};
        std::cout << j.dump(2) << "\n";
        return 1;
    }
    return kUsage;
}
