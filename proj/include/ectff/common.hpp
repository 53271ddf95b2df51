#pragma once

#include <string>
#include <string_view>

namespace ectff {

enum class Field { Real, Complex };

enum class TriState { No, Yes, Unknown };

std::string to_string(Field f);
std::string to_string(TriState t);
Field parse_field(std::string_view s);

// Kleene connectives.
TriState tri_and(TriState a, TriState b);
TriState tri_or(TriState a, TriState b);

}  // namespace ectff
