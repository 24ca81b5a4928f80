#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace diffalg {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Binomial coefficient C(n, k) for 0 <= k <= n; 0 outside that range.
Int binomial(const Int& n, const Int& k);

// Decimal parsing that rejects anything but an optionally signed integer.
Int parse_int(const std::string& text);

std::string to_decimal(const Int& v);

} // namespace diffalg
