#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chevsuper/errors.hpp"
#include "chevsuper/liesuper.hpp"
#include "chevsuper/supergroup.hpp"

namespace py = pybind11;
using namespace chevsuper;

namespace {

using BasisPtr = std::shared_ptr<const ChevalleyBasis>;

BasisPtr basis_of(const std::string& family) {
    return std::make_shared<const ChevalleyBasis>(ChevalleyBasis::build(Family::parse(family)));
}

Field field_of(const std::string& text) { return text.empty() ? default_field() : Field::parse(text); }

std::string roots(const std::string& family) { return RootSystem(Family::parse(family)).to_json().dump(); }

std::string basis(const std::string& family) { return basis_of(family)->to_json().dump(); }

std::string constants(const std::string& family) {
    auto cb = basis_of(family);
    return structure_constants_json(*cb, structure_constants(*cb)).dump();
}

std::string verify(const std::string& family, const std::string& suite, std::uint64_t seed, std::size_t words,
                   std::size_t pairs, std::size_t monomials, const std::string& field) {
    auto cb = basis_of(family);
    Field f = field_of(field);
    if (suite == "jacobi") return verify_jacobi(*cb).to_json().dump();
    if (suite == "integrality") return verify_integrality(*cb).to_json().dump();
    if (suite == "commutators") return check_commutator_formulas(*cb, f).to_json().dump();
    if (suite == "normalform") return verify_normal_form(*cb, seed, words, pairs, f).to_json().dump();
    if (suite == "kostant") return verify_kostant(*cb, seed, monomials).to_json().dump();
    if (suite == "stabilizer") return verify_stabilizer(*cb).to_json().dump();
    if (suite == "grouplaws") return verify_group_laws(*cb, f).to_json().dump();
    throw py::value_error("unknown suite " + suite);
}

std::string normalform(const std::string& family, const std::string& word, const std::string& field) {
    auto cb = basis_of(family);
    Supergroup g(cb, std::max(word_generator_count(word), 1u), field_of(field));
    auto w = parse_word(g, word);
    auto nf = normal_form(g, w);
    auto j = normal_form_json(g, nf);
    j["family"] = cb->family().name();
    j["word"] = word_to_string(g, w);
    j["round_trip"] = reconstruct(g, nf) == eval_word(g, w);
    return j.dump();
}

std::string heisenberg(unsigned n, long a) {
    if (n == 0) throw py::value_error("n must be positive");
    auto j = heisenberg_json(heisenberg_build(n, a));
    j["report"] = verify_heisenberg_group(n, a).to_json();
    return j.dump();
}

std::string obstruction() { return verify_obstruction_osp12().to_json().dump(); }

template <class E>
void bind_error(py::module_& m, const char* name, py::handle base) {
    py::register_exception<E>(m, name, base);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Chevalley bases and supergroups of classical Lie superalgebras (JSON payloads)";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    bind_error<DivisionByZero>(m, "DivisionByZero", base);
    bind_error<FieldMismatch>(m, "FieldMismatch", base);
    bind_error<InvalidField>(m, "InvalidField", base);
    bind_error<GeneratorMismatch>(m, "GeneratorMismatch", base);
    bind_error<NotInvertible>(m, "NotInvertible", base);
    bind_error<InvalidFamily>(m, "InvalidFamily", base);
    bind_error<NotARoot>(m, "NotARoot", base);
    bind_error<NotHomogeneous>(m, "NotHomogeneous", base);
    bind_error<NotAChevalleyBasis>(m, "NotAChevalleyBasis", base);
    bind_error<IntegralityViolation>(m, "IntegralityViolation", base);
    bind_error<NotRational>(m, "NotRational", base);
    bind_error<DegenerateWeights>(m, "DegenerateWeights", base);
    bind_error<NotALattice>(m, "NotALattice", base);
    bind_error<InvalidMonomial>(m, "InvalidMonomial", base);
    bind_error<ParityError>(m, "ParityError", base);
    bind_error<WrongConstructor>(m, "WrongConstructor", base);
    bind_error<FormulaMismatch>(m, "FormulaMismatch", base);
    bind_error<ParseError>(m, "ParseError", base);
    bind_error<ShapeMismatch>(m, "ShapeMismatch", base);

    m.def("roots", &roots, py::arg("family"));
    m.def("basis", &basis, py::arg("family"));
    m.def("constants", &constants, py::arg("family"));
    m.def("verify", &verify, py::arg("family"), py::arg("suite"), py::arg("seed") = 1, py::arg("words") = 200,
          py::arg("pairs") = 50, py::arg("monomials") = 500, py::arg("field") = "");
    m.def("normalform", &normalform, py::arg("family"), py::arg("word"), py::arg("field") = "");
    m.def("heisenberg", &heisenberg, py::arg("n"), py::arg("a") = 1);
    m.def("obstruction", &obstruction);
}
