#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "medea/domain.hpp"

namespace medea {

std::uint64_t fnv1a64(std::string_view bytes);

/// Canonical text form of every scenario field, numbers in shortest
/// round-trip notation. Platform independent.
std::string canonical_text(const Scenario& s);

/// 16 hex digits of FNV-1a over canonical_text.
std::string scenario_hash(const Scenario& s);

}  // namespace medea
