#ifndef SYMPJET_ERROR_HPP
#define SYMPJET_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace sympjet
{

enum class ErrorKind {
    SpaceMismatch,
    NonOriginPreserving,
    SingularLinearPart,
    DegenerateDirection,
    SingularAtOrigin,
    DegenerateForm,
    NotClosed,
    TransversalityFailure,
    PivotFailure,
    GenericityViolation,
    NotGlancing,
    CertificationFailure,
    ParseError,
};

std::string_view error_kind_name(ErrorKind kind) noexcept;

// All domain failures are reported through this type; the kind is what
// callers (and the CLI exit-code logic) dispatch on.
class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), m_kind(kind) {}

    ErrorKind kind() const noexcept
    {
        return m_kind;
    }

private:
    ErrorKind m_kind;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what)
{
    throw Error(kind, std::string(error_kind_name(kind)) + ": " + what);
}

} // namespace sympjet

#endif
