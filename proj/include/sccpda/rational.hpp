#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>

namespace sccpda {

using Rational = boost::rational<std::int64_t>;

// "p/q" in lowest terms ("p" when q == 1).
std::string to_string(const Rational &x);
// Decimal rounded half away from zero to `places` digits, e.g. "1.5000".
std::string to_decimal(const Rational &x, int places = 4);

std::int64_t binomial(std::int64_t n, std::int64_t k);

} // namespace sccpda
