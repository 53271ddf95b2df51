#include "ectff/common.hpp"

#include "ectff/error.hpp"

namespace ectff {

std::string to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

std::string to_string(TriState t) {
    switch (t) {
        case TriState::Yes: return "yes";
        case TriState::No: return "no";
        default: return "unknown";
    }
}

Field parse_field(std::string_view s) {
    if (s == "real") return Field::Real;
    if (s == "complex") return Field::Complex;
    throw DomainError("field must be 'real' or 'complex', got '" + std::string(s) + "'");
}

TriState tri_and(TriState a, TriState b) {
    if (a == TriState::No || b == TriState::No) return TriState::No;
    if (a == TriState::Yes && b == TriState::Yes) return TriState::Yes;
    return TriState::Unknown;
}

TriState tri_or(TriState a, TriState b) {
    if (a == TriState::Yes || b == TriState::Yes) return TriState::Yes;
    if (a == TriState::No && b == TriState::No) return TriState::No;
    return TriState::Unknown;
}

}  // namespace ectff
