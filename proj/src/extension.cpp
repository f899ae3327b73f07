#include "bairex/extension.hpp"

namespace bairex {

Mode mode_from_name(std::string_view name) {
    if (name == "signed") return Mode::Signed;
    if (name == "positive") return Mode::Positive;
    throw ValidationError("unknown mode '" + std::string(name) +
                          "' (expected signed or positive)");
}

std::string_view mode_name(Mode m) {
    return m == Mode::Signed ? "signed" : "positive";
}

}  // namespace bairex
