#pragma once

#include <string>

#include "newton/primitive_builder.hpp"

namespace newton {

inline constexpr int kPrimitiveFormatVersion = 1;

/// JSON text: {"format", "version", "k", "base_point", "refinement_level",
/// "cauchy_delta", "label", "breakpoints", "pieces": [[half_u, v, w], ...]}.
/// Doubles round-trip exactly.
std::string to_json(const PiecewisePrimitive& p, const std::string& label = {});

/// Throws InvalidFormat on malformed input or a version mismatch.
PiecewisePrimitive primitive_from_json(const std::string& text, std::string* label = nullptr);

void save_primitive(const std::string& path, const PiecewisePrimitive& p, const std::string& label = {});
PiecewisePrimitive load_primitive(const std::string& path, std::string* label = nullptr);

}  // namespace newton
