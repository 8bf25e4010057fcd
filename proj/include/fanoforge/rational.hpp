#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <limits>
#include <string>
#include <string_view>

#include "error.hpp"

namespace fanoforge {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

/// Canonical text form: "n" for integers, "n/d" (d > 1, reduced) otherwise.
inline std::string to_string(const Rational& r)
{
    if (is_integer(r))
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {

inline bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

} // namespace detail

/// Accepts "[-]digits" or "[-]digits/digits".
inline Rational parse_rational(std::string_view text)
{
    std::string_view body = text;
    bool negative = false;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view num = body.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den))
        fail(ErrorKind::InvalidInput, "malformed rational '" + std::string(text) + "'");
    Integer n{std::string(num)};
    Integer d{std::string(den)};
    if (d == 0)
        fail(ErrorKind::InvalidInput, "zero denominator in '" + std::string(text) + "'");
    Rational r(n, d);
    return negative ? Rational(-r) : r;
}

/// Converts to a machine integer; the value must be integral and in range.
inline long long to_int64(const Rational& r, const char* what = "value")
{
    if (!is_integer(r))
        fail(ErrorKind::InvalidInput, std::string(what) + " must be an integer, got " + to_string(r));
    const Integer& n = numerator(r);
    if (n > Integer(std::numeric_limits<long long>::max()) || n < Integer(std::numeric_limits<long long>::min()))
        fail(ErrorKind::InvalidInput, std::string(what) + " out of range");
    return n.convert_to<long long>();
}

} // namespace fanoforge
