#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace onlz {

enum class FactorKind { literal, copy };

inline std::string_view to_string(FactorKind k) { return k == FactorKind::literal ? "literal" : "copy"; }

/// One LZ factor; positions are 1-based.
///
/// A copy factor W[start..start+length-1] also occurs at \c witness, which is
/// strictly smaller than \c start (the occurrence may overlap the factor).
struct Factor {
    std::uint64_t index = 0;
    std::uint64_t start = 0;
    std::uint64_t length = 0;
    FactorKind kind = FactorKind::literal;
    std::optional<std::uint64_t> witness;
};

} // namespace onlz
