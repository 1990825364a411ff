#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace rturan {

/// Exact reduced fraction used for every density and threshold exponent.
using Rational = boost::rational<std::int64_t>;

/// "p/q" with q > 0, always including the denominator.
std::string to_string(const Rational& r);

/// Parses "p/q" or "p".
Rational parse_rational(const std::string& text);

inline double to_double(const Rational& r) {
    return boost::rational_cast<double>(r);
}

}  // namespace rturan
