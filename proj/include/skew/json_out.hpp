#pragma once

// JSON text with every float printed as %.17g and non-finite values as null.

#include <string>

#include "json.hpp"

namespace skew {

inline constexpr int kJsonSchema = 1;

std::string dump_json(const nlohmann::json& j, int indent = 2);

/// %.17g, or "" for a non-finite value (empty CSV cell).
std::string format_double(double v);

}  // namespace skew
