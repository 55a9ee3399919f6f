#include "tailsim/common.hpp"

#include "tailsim/errors.hpp"

namespace tailsim {

std::string_view to_string(Variant v) {
    return v == Variant::Sea ? "sea" : "cea";
}

std::string_view to_string(Fidelity f) {
    return f == Fidelity::Averaged ? "averaged" : "cyclic";
}

Variant parse_variant(std::string_view s) {
    if (s == "sea") return Variant::Sea;
    if (s == "cea") return Variant::Cea;
    throw ParseError("unknown variant '" + std::string(s) + "' (expected sea|cea)");
}

Fidelity parse_fidelity(std::string_view s) {
    if (s == "averaged") return Fidelity::Averaged;
    if (s == "cyclic") return Fidelity::Cyclic;
    throw ParseError("unknown fidelity '" + std::string(s) + "' (expected averaged|cyclic)");
}

}  // namespace tailsim
