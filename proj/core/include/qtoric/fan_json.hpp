#pragma once

// Fan files: {"dim": n, "rays": [[int, ...], ...], "max_cones": [[1-based, ...], ...]}

#include <string>
#include <string_view>

#include "qtoric/fan.hpp"

namespace qtoric {

/// Parses a fan document. Throws ParseError on malformed JSON or a wrong
/// schema; the result is not validated.
Fan read_fan_json(std::string_view text);
Fan read_fan_file(const std::string& path);

/// Canonical compact form, keys in the order dim, rays, max_cones, with a
/// trailing newline. read_fan_json(write_fan_json(f)) == f.
std::string write_fan_json(const Fan& fan);

}  // namespace qtoric
