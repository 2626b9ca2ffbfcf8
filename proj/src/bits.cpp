#include "sccpda/bits.hpp"

#include "sccpda/errors.hpp"

#include <cctype>

namespace sccpda {

Bits::Bits(std::size_t nbits) : nbits_(nbits), bytes_((nbits + 7) / 8, 0) {}

Bits Bits::from_hex(std::string_view hex, std::size_t nbits) {
  if (hex.starts_with("0x") || hex.starts_with("0X"))
    hex.remove_prefix(2);
  Bits out(nbits);
  if (hex.size() * 4 < nbits)
    throw IoError("hex string too short for " + std::to_string(nbits) + " bits");
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const char c = hex[d];
    if (!std::isxdigit(static_cast<unsigned char>(c)))
      throw IoError(std::string("bad hex digit '") + c + "'");
    const unsigned nibble = std::isdigit(static_cast<unsigned char>(c))
                                ? static_cast<unsigned>(c - '0')
                                : static_cast<unsigned>(std::tolower(c) - 'a' + 10);
    for (unsigned b = 0; b < 4; ++b) {
      const std::size_t pos = d * 4 + b;
      const bool bit = (nibble >> (3 - b)) & 1u;
      if (pos < nbits)
        out.set(pos, bit);
      else if (bit)
        throw IoError("hex string has nonzero bits past bit " + std::to_string(nbits));
    }
  }
  return out;
}

bool Bits::get(std::size_t i) const {
  if (i >= nbits_)
    throw std::out_of_range("Bits::get");
  return (bytes_[i / 8] >> (7 - i % 8)) & 1u;
}

void Bits::set(std::size_t i, bool v) {
  if (i >= nbits_)
    throw std::out_of_range("Bits::set");
  const auto mask = static_cast<std::uint8_t>(1u << (7 - i % 8));
  if (v)
    bytes_[i / 8] |= mask;
  else
    bytes_[i / 8] &= static_cast<std::uint8_t>(~mask);
}

std::uint32_t Bits::read_uint(std::size_t pos, unsigned width) const {
  std::uint32_t v = 0;
  for (unsigned b = 0; b < width; ++b) {
    const std::size_t i = pos + b;
    v = (v << 1) | ((i < nbits_ && get(i)) ? 1u : 0u);
  }
  return v;
}

void Bits::write_uint(std::size_t pos, unsigned width, std::uint32_t value) {
  for (unsigned b = 0; b < width; ++b) {
    const std::size_t i = pos + b;
    const bool bit = (value >> (width - 1 - b)) & 1u;
    if (i < nbits_)
      set(i, bit);
    else if (bit)
      throw std::out_of_range("Bits::write_uint: nonzero bit past end");
  }
}

Bits Bits::slice(std::size_t pos, std::size_t len) const {
  Bits out(len);
  for (std::size_t i = 0; i < len && pos + i < nbits_; ++i)
    out.set(i, get(pos + i));
  return out;
}

Bits Bits::resized(std::size_t nbits) const { return slice(0, nbits); }

Bits &Bits::operator^=(const Bits &rhs) {
  if (rhs.nbits_ != nbits_)
    throw std::invalid_argument("Bits xor: length mismatch");
  for (std::size_t i = 0; i < bytes_.size(); ++i)
    bytes_[i] ^= rhs.bytes_[i];
  return *this;
}

Bits operator^(Bits lhs, const Bits &rhs) {
  lhs ^= rhs;
  return lhs;
}

std::string Bits::to_hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  const std::size_t nibbles = (nbits_ + 3) / 4;
  out.reserve(nibbles);
  for (std::size_t d = 0; d < nibbles; ++d)
    out.push_back(digits[read_uint(d * 4, 4)]);
  return out;
}

} // namespace sccpda
