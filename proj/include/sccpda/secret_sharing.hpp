#pragma once

#include "sccpda/bits.hpp"
#include "sccpda/finite_field.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace sccpda {

// One subfile, share, or key: a sequence of field symbols. The linear maps
// below act independently on each symbol position.
using Symbols = std::vector<Element>;

struct CauchyMatrix {
  Field field;
  std::vector<Element> x; // row points
  std::vector<Element> y; // column points
  Matrix entries;         // entries(i, j) = 1 / (x_i + y_j)
};

// Entry (i, j) = inv(x_i + y_j). Defaults are x = {0, 2, 4, ...} and
// y = {1, 3, 5, ...}. Throws DomainError if the field is too small or the
// points repeat or overlap.
CauchyMatrix cauchy_build(const Field &field, std::size_t u, std::size_t v,
                          std::optional<std::vector<Element>> x = std::nullopt,
                          std::optional<std::vector<Element>> y = std::nullopt);

// Layout of a (Z, F) sharing of a B-bit file: F - Z subfiles of
// subfile_bits each, every subfile packed into symbols_per_subfile symbols.
struct SharingParams {
  int F = 0;
  int Z = 0;
  Field field{1};
  std::size_t file_bits = 0;           // B
  std::size_t subfile_bits = 0;        // ceil(B / (F - Z))
  std::size_t symbols_per_subfile = 0; // ceil(subfile_bits / r)
  std::size_t file_padding_bits = 0;   // (F - Z) * subfile_bits - B

  // Throws DomainError unless 0 <= Z < F, B >= 1 and the field has at
  // least 2F elements.
  static SharingParams make(int F, int Z, const Field &field, std::size_t B);

  int secret_len() const { return F - Z; }
  // Bits actually carried by one share, key, or delivery payload.
  std::size_t share_bits() const { return symbols_per_subfile * field.degree(); }
  bool padded() const { return file_padding_bits != 0 || share_bits() != subfile_bits; }
};

struct SecretVector {
  std::vector<Symbols> parts; // F - Z subfiles
  friend bool operator==(const SecretVector &, const SecretVector &) = default;
};
struct KeyVector {
  std::vector<Symbols> parts; // Z encryption keys
  friend bool operator==(const KeyVector &, const KeyVector &) = default;
};
struct ShareVector {
  std::vector<Symbols> parts; // F shares
  friend bool operator==(const ShareVector &, const ShareVector &) = default;
};

SecretVector split_file(const SharingParams &params, const Bits &file);
Bits join_file(const SharingParams &params, const SecretVector &secret);

Bits pack_symbols(const Field &field, const Symbols &symbols);
Symbols unpack_symbols(const Field &field, const Bits &bits, std::size_t count);
Symbols xor_symbols(const Symbols &a, const Symbols &b);

// Per symbol position: S = G [W; V].
ShareVector encode_file(const SharingParams &params, const CauchyMatrix &g, const SecretVector &w,
                        const KeyVector &v);
// Inverts encode_file from all F shares. A singular G is an InternalFault.
std::pair<SecretVector, KeyVector> decode_file(const SharingParams &params, const CauchyMatrix &g,
                                               const ShareVector &shares);

struct ThresholdReport {
  int F = 0;
  int Z = 0;
  bool full_rank = false;
  bool exhaustive = false;
  std::size_t subsets_checked = 0;
  std::vector<std::vector<int>> failing_subsets; // 1-based share rows
  std::size_t submatrices_checked = 0;
  std::vector<std::string> failing_submatrices;

  bool passed() const {
    return full_rank && failing_subsets.empty() && failing_submatrices.empty();
  }
};

// For every Z-subset of share rows (all of them when C(F, Z) <= 10000,
// otherwise `trials` random ones), the Z x Z block of key columns
// F-Z+1..F must be nonsingular. Also checks that G has full rank and that
// `trials` random square submatrices are nonsingular.
ThresholdReport threshold_secrecy_check(const CauchyMatrix &g, int Z, std::size_t trials,
                                        std::uint64_t seed = 0);

// Samples `count` square submatrices of random order and position; returns
// a description of each singular one.
std::vector<std::string> sample_singular_submatrices(const Field &field, const Matrix &m,
                                                     std::size_t count, std::mt19937_64 &rng);

} // namespace sccpda
