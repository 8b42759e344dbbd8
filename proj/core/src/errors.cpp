#include "starforge/errors.hpp"

namespace starforge {

const char* kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Usage: return "UsageError";
        case ErrorKind::NotAUnit: return "NotAUnit";
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::InvalidStar: return "InvalidStar";
        case ErrorKind::DegenerateExtension: return "DegenerateExtension";
        case ErrorKind::GenerationFailed: return "GenerationFailed";
        case ErrorKind::NotApplicable: return "NotApplicable";
        case ErrorKind::NotAProperIdeal: return "NotAProperIdeal";
        case ErrorKind::Contradiction: return "Contradiction";
    }
    return "Error";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace starforge
