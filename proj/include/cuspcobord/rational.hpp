#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace cuspcobord {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

}  // namespace cuspcobord
