#pragma once

#include <stdexcept>
#include <string>

namespace starforge {

enum class ErrorKind {
    Usage,
    NotAUnit,
    DegenerateInput,
    InvalidStar,
    DegenerateExtension,
    GenerationFailed,
    NotApplicable,
    NotAProperIdeal,
    Contradiction,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace starforge
