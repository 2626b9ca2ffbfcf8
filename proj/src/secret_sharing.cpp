#include "sccpda/secret_sharing.hpp"

#include "sccpda/errors.hpp"
#include "sccpda/rational.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace sccpda {

namespace {

void require_distinct(const std::vector<Element> &pts, const char *name) {
  std::set<Element> seen(pts.begin(), pts.end());
  if (seen.size() != pts.size())
    throw DomainError(std::string("Cauchy points ") + name + " contain a repeated element");
}

std::string describe(const std::vector<std::size_t> &rows, const std::vector<std::size_t> &cols) {
  auto list = [](const std::vector<std::size_t> &v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? "," : "") + std::to_string(v[i] + 1);
    return s + "}";
  };
  return "rows " + list(rows) + " cols " + list(cols);
}

// k distinct indices from [0, n), ascending.
std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, std::mt19937_64 &rng) {
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

} // namespace

CauchyMatrix cauchy_build(const Field &field, std::size_t u, std::size_t v,
                          std::optional<std::vector<Element>> x,
                          std::optional<std::vector<Element>> y) {
  if (u == 0 || v == 0)
    throw DomainError("Cauchy matrix dimensions must be positive");
  if (field.order() < u + v)
    throw DomainError("GF(2^" + std::to_string(field.degree()) + ") has fewer than u+v=" +
                      std::to_string(u + v) + " elements");
  auto defaults = [&](std::size_t n, std::uint32_t offset) {
    if (2 * n - 2 + offset >= field.order())
      throw DomainError("default Cauchy points need " + std::to_string(2 * n) +
                        " field elements");
    std::vector<Element> pts;
    for (std::size_t i = 0; i < n; ++i)
      pts.push_back(Element{static_cast<std::uint32_t>(2 * i + offset)});
    return pts;
  };
  CauchyMatrix c{field, x ? std::move(*x) : defaults(u, 0), y ? std::move(*y) : defaults(v, 1),
                 Matrix(u, v)};
  if (c.x.size() != u || c.y.size() != v)
    throw DomainError("Cauchy point counts do not match the requested dimensions");
  for (const auto *pts : {&c.x, &c.y})
    for (Element e : *pts)
      if (!field.contains(e))
        throw DomainError("Cauchy point " + std::to_string(e.value()) + " is not a field element");
  require_distinct(c.x, "X");
  require_distinct(c.y, "Y");
  for (Element xi : c.x)
    if (std::find(c.y.begin(), c.y.end(), xi) != c.y.end())
      throw DomainError("Cauchy point sets X and Y share " + std::to_string(xi.value()));

  for (std::size_t i = 0; i < u; ++i)
    for (std::size_t j = 0; j < v; ++j)
      c.entries.at(i, j) = field.inv(field.sub(c.x[i], c.y[j]));
  return c;
}

SharingParams SharingParams::make(int F, int Z, const Field &field, std::size_t B) {
  if (Z < 0 || F <= Z)
    throw DomainError("sharing needs 0 <= Z < F (got F=" + std::to_string(F) +
                      ", Z=" + std::to_string(Z) + ")");
  if (B == 0)
    throw DomainError("file size B must be at least one bit");
  if (field.order() < 2u * static_cast<unsigned>(F))
    throw DomainError("GF(2^" + std::to_string(field.degree()) + ") is too small for F=" +
                      std::to_string(F) + " (need 2^r >= 2F)");
  SharingParams p;
  p.F = F;
  p.Z = Z;
  p.field = field;
  p.file_bits = B;
  const auto parts = static_cast<std::size_t>(F - Z);
  p.subfile_bits = (B + parts - 1) / parts;
  p.symbols_per_subfile = (p.subfile_bits + field.degree() - 1) / field.degree();
  p.file_padding_bits = parts * p.subfile_bits - B;
  return p;
}

Bits pack_symbols(const Field &field, const Symbols &symbols) {
  const unsigned r = field.degree();
  Bits out(symbols.size() * r);
  for (std::size_t i = 0; i < symbols.size(); ++i)
    out.write_uint(i * r, r, symbols[i].value());
  return out;
}

Symbols unpack_symbols(const Field &field, const Bits &bits, std::size_t count) {
  const unsigned r = field.degree();
  Symbols out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = Element{bits.read_uint(i * r, r)};
  return out;
}

Symbols xor_symbols(const Symbols &a, const Symbols &b) {
  if (a.size() != b.size())
    throw std::invalid_argument("xor_symbols: length mismatch");
  Symbols out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = Element{a[i].value() ^ b[i].value()};
  return out;
}

SecretVector split_file(const SharingParams &params, const Bits &file) {
  if (file.size() != params.file_bits)
    throw DomainError("file has " + std::to_string(file.size()) + " bits, expected " +
                      std::to_string(params.file_bits));
  SecretVector w;
  for (int j = 0; j < params.secret_len(); ++j) {
    const Bits sub = file.slice(static_cast<std::size_t>(j) * params.subfile_bits, params.subfile_bits);
    w.parts.push_back(unpack_symbols(params.field, sub, params.symbols_per_subfile));
  }
  return w;
}

Bits join_file(const SharingParams &params, const SecretVector &secret) {
  if (static_cast<int>(secret.parts.size()) != params.secret_len())
    throw std::invalid_argument("join_file: wrong number of subfiles");
  Bits out(params.file_bits);
  std::size_t pos = 0;
  for (const auto &part : secret.parts) {
    const Bits sub = pack_symbols(params.field, part);
    for (std::size_t i = 0; i < params.subfile_bits && pos < params.file_bits; ++i, ++pos)
      out.set(pos, sub.get(i));
  }
  return out;
}

ShareVector encode_file(const SharingParams &params, const CauchyMatrix &g, const SecretVector &w,
                        const KeyVector &v) {
  const auto F = static_cast<std::size_t>(params.F);
  if (g.entries.rows() != F || g.entries.cols() != F || !(g.field == params.field))
    throw std::invalid_argument("encode_file: G must be F x F over the sharing field");
  if (static_cast<int>(w.parts.size()) != params.secret_len() ||
      static_cast<int>(v.parts.size()) != params.Z)
    throw std::invalid_argument("encode_file: secret/key vector lengths do not match (F, Z)");
  const std::size_t len = params.symbols_per_subfile;
  for (const auto *vec : {&w.parts, &v.parts})
    for (const auto &part : *vec)
      if (part.size() != len)
        throw std::invalid_argument("encode_file: symbol sequences have unequal length");

  ShareVector s{std::vector<Symbols>(F, Symbols(len))};
  std::vector<Element> y(F);
  for (std::size_t pos = 0; pos < len; ++pos) {
    for (std::size_t j = 0; j < w.parts.size(); ++j)
      y[j] = w.parts[j][pos];
    for (std::size_t j = 0; j < v.parts.size(); ++j)
      y[w.parts.size() + j] = v.parts[j][pos];
    const auto col = mat_vec(params.field, g.entries, y);
    for (std::size_t i = 0; i < F; ++i)
      s.parts[i][pos] = col[i];
  }
  return s;
}

std::pair<SecretVector, KeyVector> decode_file(const SharingParams &params, const CauchyMatrix &g,
                                               const ShareVector &shares) {
  const auto F = static_cast<std::size_t>(params.F);
  if (shares.parts.size() != F)
    throw std::invalid_argument("decode_file: all F shares are required");
  Matrix ginv;
  try {
    ginv = mat_inv(params.field, g.entries);
  } catch (const DomainError &) {
    throw InternalFault("decode_file: sharing matrix is singular");
  }
  const std::size_t len = params.symbols_per_subfile;
  const auto secret_len = static_cast<std::size_t>(params.secret_len());
  SecretVector w{std::vector<Symbols>(secret_len, Symbols(len))};
  KeyVector v{std::vector<Symbols>(F - secret_len, Symbols(len))};
  std::vector<Element> col(F);
  for (std::size_t pos = 0; pos < len; ++pos) {
    for (std::size_t i = 0; i < F; ++i) {
      if (shares.parts[i].size() != len)
        throw std::invalid_argument("decode_file: share has wrong length");
      col[i] = shares.parts[i][pos];
    }
    const auto y = mat_vec(params.field, ginv, col);
    for (std::size_t j = 0; j < F; ++j)
      (j < secret_len ? w.parts[j] : v.parts[j - secret_len])[pos] = y[j];
  }
  return {std::move(w), std::move(v)};
}

std::vector<std::string> sample_singular_submatrices(const Field &field, const Matrix &m,
                                                     std::size_t count, std::mt19937_64 &rng) {
  std::vector<std::string> failures;
  const std::size_t max_order = std::min(m.rows(), m.cols());
  if (max_order == 0)
    return failures;
  for (std::size_t trial = 0; trial < count; ++trial) {
    const std::size_t order = 1 + static_cast<std::size_t>(rng() % max_order);
    const auto rows = random_subset(m.rows(), order, rng);
    const auto cols = random_subset(m.cols(), order, rng);
    if (mat_rank(field, m.submatrix(rows, cols)) != order)
      failures.push_back(describe(rows, cols));
  }
  return failures;
}

ThresholdReport threshold_secrecy_check(const CauchyMatrix &g, int Z, std::size_t trials,
                                        std::uint64_t seed) {
  const auto F = static_cast<int>(g.entries.rows());
  if (g.entries.cols() != static_cast<std::size_t>(F))
    throw std::invalid_argument("threshold_secrecy_check: G must be square");
  if (Z < 0 || Z >= F)
    throw std::invalid_argument("threshold_secrecy_check: need 0 <= Z < F");

  ThresholdReport rep;
  rep.F = F;
  rep.Z = Z;
  rep.full_rank = mat_rank(g.field, g.entries) == static_cast<std::size_t>(F);

  std::vector<std::size_t> key_cols;
  for (int c = F - Z; c < F; ++c)
    key_cols.push_back(static_cast<std::size_t>(c));

  std::mt19937_64 rng(seed);
  auto check = [&](const std::vector<std::size_t> &rows) {
    ++rep.subsets_checked;
    if (mat_rank(g.field, g.entries.submatrix(rows, key_cols)) != static_cast<std::size_t>(Z)) {
      std::vector<int> one_based;
      for (auto r : rows)
        one_based.push_back(static_cast<int>(r) + 1);
      rep.failing_subsets.push_back(std::move(one_based));
    }
  };

  if (Z > 0) {
    if (binomial(F, Z) <= 10000) {
      rep.exhaustive = true;
      std::vector<bool> mask(static_cast<std::size_t>(F), false);
      std::fill(mask.begin(), mask.begin() + Z, true);
      do {
        std::vector<std::size_t> rows;
        for (int i = 0; i < F; ++i)
          if (mask[static_cast<std::size_t>(i)])
            rows.push_back(static_cast<std::size_t>(i));
        check(rows);
      } while (std::prev_permutation(mask.begin(), mask.end()));
    } else {
      for (std::size_t t = 0; t < trials; ++t)
        check(random_subset(static_cast<std::size_t>(F), static_cast<std::size_t>(Z), rng));
    }
  } else {
    rep.exhaustive = true;
  }

  rep.failing_submatrices = sample_singular_submatrices(g.field, g.entries, trials, rng);
  rep.submatrices_checked = trials;
  return rep;
}

} // namespace sccpda
