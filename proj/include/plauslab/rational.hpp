#pragma once

#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace plauslab {

using Rational = boost::rational<long long>;

// Accepts "p/q", "p" or a terminating decimal such as "0.25".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

}  // namespace plauslab
