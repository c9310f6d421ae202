#pragma once

#include <stdexcept>
#include <string>

namespace chevsuper {

// Every failure raised by the library derives from Error, so callers can
// catch the whole family at once and still dispatch on the concrete kind.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CHEVSUPER_ERROR(Name)                                   \
    class Name : public Error {                                 \
    public:                                                     \
        explicit Name(const std::string& what) : Error(what) {} \
    }

CHEVSUPER_ERROR(DivisionByZero);
CHEVSUPER_ERROR(FieldMismatch);
CHEVSUPER_ERROR(InvalidField);
CHEVSUPER_ERROR(GeneratorMismatch);
CHEVSUPER_ERROR(NotInvertible);
CHEVSUPER_ERROR(InvalidFamily);
CHEVSUPER_ERROR(NotARoot);
CHEVSUPER_ERROR(NotHomogeneous);
CHEVSUPER_ERROR(NotAChevalleyBasis);
CHEVSUPER_ERROR(IntegralityViolation);
CHEVSUPER_ERROR(NotRational);
CHEVSUPER_ERROR(DegenerateWeights);
CHEVSUPER_ERROR(NotALattice);
CHEVSUPER_ERROR(InvalidMonomial);
CHEVSUPER_ERROR(ParityError);
CHEVSUPER_ERROR(WrongConstructor);
CHEVSUPER_ERROR(FormulaMismatch);
CHEVSUPER_ERROR(ParseError);
CHEVSUPER_ERROR(ShapeMismatch);

#undef CHEVSUPER_ERROR

}  // namespace chevsuper
