#include "sccpda/bits.hpp"
#include "sccpda/errors.hpp"
#include "sccpda/rational.hpp"

#include <doctest.h>

using namespace sccpda;

TEST_CASE("hex round trip and MSB-first layout") {
  const auto b = Bits::from_hex("a4", 6); // 101001
  CHECK(b.size() == 6);
  CHECK(b.get(0));
  CHECK_FALSE(b.get(1));
  CHECK(b.read_uint(0, 3) == 5);
  CHECK(b.read_uint(3, 3) == 1);
  CHECK(b.to_hex() == "a4");
  CHECK(b.read_uint(4, 4) == 4); // past the end reads zeros
  CHECK_THROWS_AS(Bits::from_hex("a6", 6), IoError); // nonzero bits past 6
  CHECK_THROWS_AS(Bits::from_hex("zz", 8), IoError);
  CHECK_THROWS_AS(Bits::from_hex("a", 8), IoError);
  CHECK(Bits::from_hex("0xff", 8).to_hex() == "ff");
}

TEST_CASE("xor, slice and resize") {
  Bits a(10), b(10);
  a.write_uint(0, 10, 0x3ff);
  b.write_uint(2, 4, 0xf);
  const auto c = a ^ b;
  CHECK(c.read_uint(0, 10) == 0x30f);
  CHECK(c.slice(2, 4).read_uint(0, 4) == 0);
  CHECK(a.resized(12).read_uint(0, 12) == 0xffc);
  CHECK(a.resized(3).size() == 3);
}

TEST_CASE("rationals print exactly and to four places") {
  CHECK(to_string(Rational(3, 2)) == "3/2");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(to_decimal(Rational(3, 2)) == "1.5000");
  CHECK(to_decimal(Rational(2, 3)) == "0.6667");
  CHECK(to_decimal(Rational(-1, 8)) == "-0.1250");
  CHECK(to_decimal(Rational(1, 20000)) == "0.0001");
  CHECK(binomial(5, 3) == 10);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(3, 4) == 0);
}
