#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace sccpda {

// An element of GF(2^r): bit i of value() is the coefficient of alpha^i.
class Element {
public:
  constexpr Element() = default;
  constexpr explicit Element(std::uint32_t v) : value_(v) {}

  constexpr std::uint32_t value() const { return value_; }
  constexpr bool is_zero() const { return value_ == 0; }

  friend constexpr auto operator<=>(Element, Element) = default;

private:
  std::uint32_t value_ = 0;
};

// GF(2^r) for 1 <= r <= 16, given by a monic irreducible polynomial over
// GF(2) encoded as bits (bit r set). Copies share the lookup tables.
class Field {
public:
  static constexpr unsigned kMaxDegree = 16;

  // Without a polynomial, uses default_poly(r). Throws DomainError for
  // r out of range or a polynomial that is not irreducible of degree r.
  explicit Field(unsigned r, std::optional<std::uint32_t> poly = std::nullopt);

  // Smallest field with at least `min_order` elements.
  static Field with_min_order(std::uint64_t min_order);

  // Fixed primitive polynomial for each degree (Conway polynomials for
  // p = 2); reports record the polynomial actually used.
  static std::uint32_t default_poly(unsigned r);
  static bool is_irreducible(std::uint32_t poly);

  unsigned degree() const { return r_; }
  std::uint32_t poly() const { return poly_; }
  std::uint32_t order() const { return 1u << r_; }

  // Checked construction: throws DomainError when v >= order().
  Element element(std::uint32_t v) const;
  bool contains(Element a) const { return a.value() < order(); }

  Element zero() const { return Element{0}; }
  Element one() const { return Element{1}; }

  Element add(Element a, Element b) const { return Element{a.value() ^ b.value()}; }
  Element sub(Element a, Element b) const { return add(a, b); }
  Element mul(Element a, Element b) const;
  // Throws DomainError for a == 0.
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const;

  // Shift-and-reduce product with no tables; the reference the table
  // path must agree with.
  Element mul_carryless(Element a, Element b) const;

  friend bool operator==(const Field &a, const Field &b) {
    return a.r_ == b.r_ && a.poly_ == b.poly_;
  }

private:
  struct Tables;
  unsigned r_;
  std::uint32_t poly_;
  std::shared_ptr<const Tables> tables_;
};

// Dense row-major matrix of field elements.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Element> data);

  static Matrix identity(std::size_t n);
  // Builds from integer values; every row must have the same length.
  static Matrix from_values(const std::vector<std::vector<std::uint32_t>> &rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element &at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Element at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<const Element> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  Matrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;
  Matrix transposed() const;
  std::vector<std::vector<std::uint32_t>> values() const;

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

Matrix mat_mul(const Field &f, const Matrix &a, const Matrix &b);
std::vector<Element> mat_vec(const Field &f, const Matrix &a, std::span<const Element> x);
// Gauss-Jordan inverse; throws DomainError if `a` is not square or singular.
Matrix mat_inv(const Field &f, const Matrix &a);
std::size_t mat_rank(const Field &f, Matrix a);

} // namespace sccpda
