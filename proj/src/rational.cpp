#include "sccpda/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace sccpda {

std::string to_string(const Rational &x) {
  if (x.denominator() == 1)
    return std::to_string(x.numerator());
  return std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
}

std::string to_decimal(const Rational &x, int places) {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i)
    scale *= 10;
  const bool negative = x.numerator() < 0;
  const std::int64_t num = negative ? -x.numerator() : x.numerator();
  const std::int64_t den = x.denominator();
  // round(num * scale / den), half away from zero
  const std::int64_t scaled = (num * scale * 2 + den) / (den * 2);
  std::string digits = std::to_string(scaled % scale);
  digits.insert(digits.begin(), static_cast<std::size_t>(places) - digits.size(), '0');
  std::string out = (negative && scaled != 0 ? "-" : "") + std::to_string(scaled / scale);
  if (places > 0)
    out += "." + digits;
  return out;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n)
    return 0;
  k = std::min(k, n - k);
  std::int64_t acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) is divisible by i at every step
    acc = acc * (n - k + i) / i;
  }
  return acc;
}

} // namespace sccpda
