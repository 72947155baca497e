#pragma once

#include <string>

#include <json.hpp>

namespace seamkit {

using Json = nlohmann::json;

/// Deterministic JSON text: sorted keys, 2-space indentation, arrays of
/// scalars on one line, integers verbatim, floats with exactly 6 decimals and no
/// negative zero.
std::string dump_stable(const Json& j);

/// Parses JSON text. Syntax errors become FormatError with the line number;
/// `origin` names the document in messages.
Json parse_json(const std::string& text, const std::string& origin);

/// Reads and parses a file.
Json read_json_file(const std::string& path);

}  // namespace seamkit
