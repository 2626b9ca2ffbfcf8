#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sccpda {

// Fixed-length bit string, MSB-first within each byte. Bits past size()
// in the last byte are always zero, so equality is bytewise.
class Bits {
public:
  Bits() = default;
  explicit Bits(std::size_t nbits);

  // Parses big-endian hex (optional 0x prefix) and keeps the first nbits
  // bits. Throws IoError on bad digits, too few digits, or nonzero bits
  // past nbits.
  static Bits from_hex(std::string_view hex, std::size_t nbits);

  std::size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool get(std::size_t i) const;
  void set(std::size_t i, bool v);

  // Reads/writes `width` bits starting at `pos` as an unsigned integer,
  // MSB first. Reads past the end yield zero bits.
  std::uint32_t read_uint(std::size_t pos, unsigned width) const;
  void write_uint(std::size_t pos, unsigned width, std::uint32_t value);

  Bits slice(std::size_t pos, std::size_t len) const;
  Bits resized(std::size_t nbits) const;
  Bits &operator^=(const Bits &rhs);

  std::string to_hex() const;
  const std::vector<std::uint8_t> &bytes() const { return bytes_; }

  friend bool operator==(const Bits &, const Bits &) = default;

private:
  std::size_t nbits_ = 0;
  std::vector<std::uint8_t> bytes_;
};

Bits operator^(Bits lhs, const Bits &rhs);

} // namespace sccpda
