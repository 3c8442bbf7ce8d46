/**
 * @file json_io.hpp
 * @brief Strict field access for the structured-text formats (catalog, manifest, gram files).
 *
 * Integers travel as decimal strings so that arbitrary precision survives a
 * round trip; plain JSON integers are accepted on input and normalized on output.
 * All failures throw Error(InvalidManifest) naming the offending path.
 */

#pragma once

#include "formgate/numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

namespace formgate::json_io {

using json = nlohmann::json;

void require_object(const json& j, std::string_view where);
void reject_unknown_fields(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where);
[[nodiscard]] const json& require_field(const json& j, std::string_view field, std::string_view where);

[[nodiscard]] Integer as_integer(const json& j, std::string_view where);
[[nodiscard]] std::int64_t as_int64(const json& j, std::string_view where);
[[nodiscard]] Rational as_rational(const json& j, std::string_view where);
[[nodiscard]] bool as_bool(const json& j, std::string_view where);
[[nodiscard]] std::string as_string(const json& j, std::string_view where);

[[nodiscard]] inline json integer_string(const Integer& v) { return v.get_str(10); }
[[nodiscard]] inline json integer_string(std::int64_t v) { return std::to_string(v); }

/// Parses a document, mapping syntax errors to Error(ParseError).
[[nodiscard]] json parse_document(std::string_view text, std::string_view where);
[[nodiscard]] json read_file(const std::string& path);

/// Canonical serialization: sorted keys, two-space indent, trailing newline.
[[nodiscard]] std::string canonical_dump(const json& j);

}  // namespace formgate::json_io
