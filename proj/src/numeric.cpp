#include "formgate/numeric.hpp"

#include "formgate/error.hpp"

#include <cctype>

namespace formgate {

namespace {

bool is_decimal_integer(std::string_view text)
{
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        text.remove_prefix(1);
    }
    if (text.empty()) {
        return false;
    }
    for (char c : text) {
        if (std::isdigit(static_cast<unsigned char>(c)) == 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

Integer parse_integer(std::string_view text)
{
    if (!is_decimal_integer(text)) {
        throw Error(ErrorCode::ParseError, "not a decimal integer: '" + std::string(text) + "'");
    }
    if (text.front() == '+') {
        text.remove_prefix(1);
    }
    return Integer(std::string(text), 10);
}

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_integer(text));
    }
    const Integer num = parse_integer(text.substr(0, slash));
    const std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text.front() == '-' || den_text.front() == '+')) {
        throw Error(ErrorCode::ParseError, "signed denominator in '" + std::string(text) + "'");
    }
    const Integer den = parse_integer(den_text);
    if (den == 0) {
        throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    }
    Rational result(num, den);
    result.canonicalize();
    return result;
}

std::string to_decimal(const Rational& value)
{
    Rational v = value;
    v.canonicalize();
    if (v.get_den() == 1) {
        return v.get_num().get_str(10);
    }
    return v.get_num().get_str(10) + "/" + v.get_den().get_str(10);
}

std::int64_t to_int64(const Integer& value)
{
    if (!value.fits_slong_p()) {
        throw Error(ErrorCode::InvalidArgument, "integer out of machine range: " + value.get_str());
    }
    return static_cast<std::int64_t>(value.get_si());
}

}  // namespace formgate
