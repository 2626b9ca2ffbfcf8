#include "sccpda/finite_field.hpp"

#include "sccpda/errors.hpp"

#include <array>
#include <bit>
#include <string>

namespace sccpda {

namespace {

// Products are tabulated in full up to GF(256); above that the
// shift-and-reduce path is used directly.
constexpr unsigned kTableMaxDegree = 8;

constexpr std::array<std::uint32_t, Field::kMaxDegree + 1> kDefaultPolys = {
    0,       0x3,    0x7,    0xb,    0x13,   0x25,   0x5b,   0x83,   0x11d,
    0x211,   0x46f,  0x805,  0x10eb, 0x201b, 0x40a9, 0x8035, 0x1002d,
};

int poly_degree(std::uint32_t p) { return p == 0 ? -1 : static_cast<int>(std::bit_width(p)) - 1; }

std::uint32_t poly_mod(std::uint32_t a, std::uint32_t b) {
  const int db = poly_degree(b);
  for (int da = poly_degree(a); da >= db; da = poly_degree(a))
    a ^= b << (da - db);
  return a;
}

std::uint32_t carryless_mul(std::uint32_t a, std::uint32_t b, std::uint32_t poly, unsigned r) {
  std::uint32_t acc = 0;
  while (b != 0) {
    if (b & 1u)
      acc ^= a;
    b >>= 1;
    a <<= 1;
    if ((a >> r) & 1u)
      a ^= poly;
  }
  return acc;
}

std::string hex(std::uint32_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  do {
    s.insert(s.begin(), digits[v & 0xf]);
    v >>= 4;
  } while (v != 0);
  return "0x" + s;
}

} // namespace

struct Field::Tables {
  std::vector<std::uint16_t> product; // order x order, row-major
  std::vector<std::uint16_t> inverse;
};

Field::Field(unsigned r, std::optional<std::uint32_t> poly) : r_(r) {
  if (r < 1 || r > kMaxDegree)
    throw DomainError("field degree r=" + std::to_string(r) + " outside [1, " +
                      std::to_string(kMaxDegree) + "]");
  poly_ = poly.value_or(kDefaultPolys[r]);
  if (poly_degree(poly_) != static_cast<int>(r))
    throw DomainError("polynomial " + hex(poly_) + " does not have degree " + std::to_string(r));
  if (!is_irreducible(poly_))
    throw DomainError("polynomial " + hex(poly_) + " is reducible over GF(2)");

  if (r <= kTableMaxDegree) {
    auto t = std::make_shared<Tables>();
    const std::uint32_t q = order();
    t->product.resize(static_cast<std::size_t>(q) * q);
    t->inverse.resize(q, 0);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        const auto p = carryless_mul(a, b, poly_, r_);
        t->product[a * q + b] = static_cast<std::uint16_t>(p);
        if (p == 1)
          t->inverse[a] = static_cast<std::uint16_t>(b);
      }
    tables_ = std::move(t);
  }
}

Field Field::with_min_order(std::uint64_t min_order) {
  unsigned r = 1;
  while (r <= kMaxDegree && (std::uint64_t{1} << r) < min_order)
    ++r;
  if (r > kMaxDegree)
    throw DomainError("no supported field has " + std::to_string(min_order) + " elements");
  return Field(r);
}

std::uint32_t Field::default_poly(unsigned r) {
  if (r < 1 || r > kMaxDegree)
    throw DomainError("no default polynomial for r=" + std::to_string(r));
  return kDefaultPolys[r];
}

bool Field::is_irreducible(std::uint32_t poly) {
  const int n = poly_degree(poly);
  if (n < 1)
    return false;
  // Any factorization has a factor of degree <= n/2.
  for (std::uint32_t d = 2; poly_degree(d) <= n / 2; ++d)
    if (poly_mod(poly, d) == 0)
      return false;
  return true;
}

Element Field::element(std::uint32_t v) const {
  if (v >= order())
    throw DomainError("value " + std::to_string(v) + " is not an element of GF(2^" +
                      std::to_string(r_) + ")");
  return Element{v};
}

Element Field::mul(Element a, Element b) const {
  if (tables_)
    return Element{tables_->product[a.value() * order() + b.value()]};
  return mul_carryless(a, b);
}

Element Field::mul_carryless(Element a, Element b) const {
  return Element{carryless_mul(a.value(), b.value(), poly_, r_)};
}

Element Field::pow(Element a, std::uint64_t e) const {
  Element acc = one();
  while (e != 0) {
    if (e & 1u)
      acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

Element Field::inv(Element a) const {
  if (a.is_zero())
    throw DomainError("zero has no multiplicative inverse");
  if (tables_)
    return Element{tables_->inverse[a.value()]};
  return pow(a, order() - 2);
}

// ---------------------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Element> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw std::invalid_argument("Matrix: entry count does not match dimensions");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.at(i, i) = Element{1};
  return m;
}

Matrix Matrix::from_values(const std::vector<std::vector<std::uint32_t>> &rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw std::invalid_argument("Matrix::from_values: ragged rows");
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = Element{rows[i][j]};
  }
  return m;
}

Matrix Matrix::submatrix(std::span<const std::size_t> row_idx,
                         std::span<const std::size_t> col_idx) const {
  Matrix m(row_idx.size(), col_idx.size());
  for (std::size_t i = 0; i < row_idx.size(); ++i)
    for (std::size_t j = 0; j < col_idx.size(); ++j)
      m.at(i, j) = at(row_idx[i], col_idx[j]);
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      t.at(j, i) = at(i, j);
  return t;
}

std::vector<std::vector<std::uint32_t>> Matrix::values() const {
  std::vector<std::vector<std::uint32_t>> out(rows_, std::vector<std::uint32_t>(cols_));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out[i][j] = at(i, j).value();
  return out;
}

Matrix mat_mul(const Field &f, const Matrix &a, const Matrix &b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("mat_mul: inner dimensions " + std::to_string(a.cols()) +
                                " and " + std::to_string(b.rows()) + " differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Element aik = a.at(i, k);
      if (aik.is_zero())
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c.at(i, j) = f.add(c.at(i, j), f.mul(aik, b.at(k, j)));
    }
  return c;
}

std::vector<Element> mat_vec(const Field &f, const Matrix &a, std::span<const Element> x) {
  if (a.cols() != x.size())
    throw std::invalid_argument("mat_vec: dimension mismatch");
  std::vector<Element> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      y[i] = f.add(y[i], f.mul(a.at(i, j), x[j]));
  return y;
}

Matrix mat_inv(const Field &f, const Matrix &a) {
  if (a.rows() != a.cols())
    throw DomainError("mat_inv: matrix is not square");
  const std::size_t n = a.rows();
  Matrix work = a;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work.at(pivot, col).is_zero())
      ++pivot;
    if (pivot == n)
      throw DomainError("mat_inv: matrix is singular");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work.at(pivot, j), work.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    const Element scale = f.inv(work.at(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      work.at(col, j) = f.mul(work.at(col, j), scale);
      inv.at(col, j) = f.mul(inv.at(col, j), scale);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Element factor = work.at(i, col);
      if (i == col || factor.is_zero())
        continue;
      for (std::size_t j = 0; j < n; ++j) {
        work.at(i, j) = f.sub(work.at(i, j), f.mul(factor, work.at(col, j)));
        inv.at(i, j) = f.sub(inv.at(i, j), f.mul(factor, inv.at(col, j)));
      }
    }
  }
  return inv;
}

std::size_t mat_rank(const Field &f, Matrix a) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows() && a.at(pivot, col).is_zero())
      ++pivot;
    if (pivot == a.rows())
      continue;
    for (std::size_t j = 0; j < a.cols(); ++j)
      std::swap(a.at(pivot, j), a.at(rank, j));
    const Element scale = f.inv(a.at(rank, col));
    for (std::size_t i = rank + 1; i < a.rows(); ++i) {
      const Element factor = f.mul(a.at(i, col), scale);
      if (factor.is_zero())
        continue;
      for (std::size_t j = col; j < a.cols(); ++j)
        a.at(i, j) = f.sub(a.at(i, j), f.mul(factor, a.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

} // namespace sccpda
