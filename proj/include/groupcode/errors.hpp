#pragma once

#include <stdexcept>
#include <string>

namespace groupcode {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define GROUPCODE_DEFINE_ERROR(Name)                  \
    class Name : public Error {                       \
    public:                                           \
        explicit Name(const std::string& what)        \
            : Error(std::string(#Name ": ") + what) {} \
    }

// group arithmetic
GROUPCODE_DEFINE_ERROR(InvalidFactor);
GROUPCODE_DEFINE_ERROR(WrongGroup);
GROUPCODE_DEFINE_ERROR(NotASubgroup);
GROUPCODE_DEFINE_ERROR(NotAbelian);
GROUPCODE_DEFINE_ERROR(NotAHomomorphism);

// extensions and encoders
GROUPCODE_DEFINE_ERROR(NotApplicable);
GROUPCODE_DEFINE_ERROR(NuNotSurjective);
GROUPCODE_DEFINE_ERROR(NuNotHom);
GROUPCODE_DEFINE_ERROR(OmegaNotHom);
GROUPCODE_DEFINE_ERROR(PsiNotInjective);

// analysis
GROUPCODE_DEFINE_ERROR(SizeViolation);
GROUPCODE_DEFINE_ERROR(PredicateViolation);
GROUPCODE_DEFINE_ERROR(NotPrime);
GROUPCODE_DEFINE_ERROR(TooLarge);

// input files
GROUPCODE_DEFINE_ERROR(ParseError);

#undef GROUPCODE_DEFINE_ERROR

}  // namespace groupcode
