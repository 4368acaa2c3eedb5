#pragma once

#include <string>

#include "avk/lie_algebra.hpp"

namespace avk {

/// Reads an algebra description from JSON text. Rationals are "p/q" strings.
/// Throws kParse on malformed input.
AlgebraConfig parse_algebra_config(const std::string& json_text);
std::string algebra_config_to_json(const AlgebraConfig& config);

/// "sl2", "sl3" or a path to a JSON config file.
AlgebraConfig load_algebra_config(const std::string& source);

}  // namespace avk
