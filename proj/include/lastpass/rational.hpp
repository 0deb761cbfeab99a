// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace lastpass {

/// Arbitrary-precision rational used by all exact walk computations.
using Rational = boost::multiprecision::cpp_rational;

/// Parses "p", "-p" or "p/q" with integer p, q (q > 0).
/// Throws ConfigError on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is one.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace lastpass
