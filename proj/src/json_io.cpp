#include "formgate/json_io.hpp"

#include "formgate/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace formgate::json_io {

namespace {

[[noreturn]] void fail(std::string_view where, const std::string& what)
{
    throw Error(ErrorCode::InvalidManifest, std::string(where) + ": " + what);
}

}  // namespace

void require_object(const json& j, std::string_view where)
{
    if (!j.is_object()) {
        fail(where, "expected an object");
    }
}

void reject_unknown_fields(const json& j, std::initializer_list<std::string_view> allowed, std::string_view where)
{
    require_object(j, where);
    for (const auto& [key, value] : j.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            fail(where, "unknown field '" + key + "'");
        }
    }
}

const json& require_field(const json& j, std::string_view field, std::string_view where)
{
    require_object(j, where);
    const auto it = j.find(std::string(field));
    if (it == j.end()) {
        fail(where, "missing field '" + std::string(field) + "'");
    }
    return *it;
}

Integer as_integer(const json& j, std::string_view where)
{
    if (j.is_number_integer()) {
        return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>()))
                                      : Integer(std::to_string(j.get<std::int64_t>()));
    }
    if (j.is_string()) {
        try {
            return parse_integer(j.get<std::string>());
        } catch (const Error& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected an integer (decimal string)");
}

std::int64_t as_int64(const json& j, std::string_view where)
{
    const Integer v = as_integer(j, where);
    if (!v.fits_slong_p()) {
        fail(where, "integer out of range");
    }
    return v.get_si();
}

Rational as_rational(const json& j, std::string_view where)
{
    if (j.is_number_integer()) {
        return Rational(as_integer(j, where));
    }
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const Error& e) {
            fail(where, e.what());
        }
    }
    fail(where, "expected a rational (\"p\" or \"p/q\")");
}

bool as_bool(const json& j, std::string_view where)
{
    if (!j.is_boolean()) {
        fail(where, "expected true or false");
    }
    return j.get<bool>();
}

std::string as_string(const json& j, std::string_view where)
{
    if (!j.is_string()) {
        fail(where, "expected a string");
    }
    return j.get<std::string>();
}

json parse_document(std::string_view text, std::string_view where)
{
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string(where) + ": " + e.what());
    }
}

json read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_document(buffer.str(), path);
}

std::string canonical_dump(const json& j)
{
    return j.dump(2) + "\n";
}

}  // namespace formgate::json_io
