#pragma once

#include "sccpda/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sccpda {

// A PDA cell: '*' or an integer label >= 1.
class PdaEntry {
public:
  static constexpr PdaEntry star() { return PdaEntry(0); }
  // Throws std::invalid_argument for s < 1.
  static PdaEntry integer(int s);

  constexpr bool is_star() const { return label_ == 0; }
  constexpr bool is_integer() const { return label_ != 0; }
  // The integer label; 0 for a star.
  constexpr int value() const { return label_; }

  friend constexpr bool operator==(PdaEntry, PdaEntry) = default;

private:
  constexpr explicit PdaEntry(int label) : label_(label) {}
  int label_;
};

// 1-based (row, column) coordinate as used in reports.
struct Cell {
  int row;
  int col;
  friend constexpr auto operator<=>(const Cell &, const Cell &) = default;
};

// An F x K array of stars and integers. Construction does not check the
// PDA conditions; see validate().
class Pda {
public:
  Pda() = default;
  // `declared_s`, when given, is the S the grid claims to use; otherwise
  // S is the largest label present.
  static Pda from_grid(std::vector<std::vector<PdaEntry>> rows,
                       std::optional<int> declared_s = std::nullopt);

  int rows() const { return f_; } // F
  int cols() const { return k_; } // K
  // 0-based access.
  PdaEntry at(int j, int k) const { return grid_[static_cast<std::size_t>(j) * k_ + k]; }

  // Star count of the first column (C1 decides whether all columns agree).
  int z() const;
  int s() const { return s_; }
  int stars_in_column(int k) const;
  // Cells holding label s, row-major, 1-based coordinates.
  std::vector<Cell> occurrences(int s) const;
  // Distinct labels in column k (0-based), ascending.
  std::vector<int> labels_in_column(int k) const;

  // Original label -> contiguous label, filled only when the parser had to
  // compact sparse labels.
  const std::map<std::int64_t, int> &relabeling() const { return relabel_; }

  friend bool operator==(const Pda &a, const Pda &b) {
    return a.f_ == b.f_ && a.k_ == b.k_ && a.s_ == b.s_ && a.grid_ == b.grid_;
  }

private:
  friend Pda parse_pda(std::string_view text);
  int f_ = 0;
  int k_ = 0;
  int s_ = 0;
  std::vector<PdaEntry> grid_;
  std::map<std::int64_t, int> relabel_;
};

struct Violation {
  std::string condition; // "C1", "C2", "C3a", "C3b"
  std::vector<Cell> cells;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

// Text format: F lines of K tokens ("*" or a positive decimal integer);
// blank lines and lines starting with '#' are ignored. Sparse labels are
// compacted to 1..S in first-appearance order. Throws IoError.
Pda parse_pda(std::string_view text);
std::string serialize_pda(const Pda &p);

ValidationReport validate(const Pda &p);
// Common multiplicity g when every label occurs equally often.
std::optional<int> regularity(const Pda &p);

// MN array: rows are the t-subsets of [K] in lexicographic
// order; cell (T, k) is '*' if k is in T, else the lexicographic rank of
// T u {k} among (t+1)-subsets. Requires 0 <= t <= K-1.
Pda mn_pda(int K, int t);

struct SchemeParams {
  int K = 0;
  int F = 0;
  int Z = 0;
  int S = 0;
  int N = 0;
  std::optional<int> g;
  Rational M;            // NZ/(F-Z) + 1, secretive scheme
  Rational rate_secret;  // S/(F-Z)
  Rational M_plain;      // NZ/F, non-secretive scheme
  Rational rate_plain;   // S/F
  int subpkt_secret = 0; // F-Z
  int subpkt_plain = 0;  // F
};

// Throws DomainError if `p` is not a valid PDA or has no integer entries.
SchemeParams derive_params(const Pda &p, int N);
// Same quantities from a bare (K,F,Z,S) tuple.
SchemeParams derive_params(int K, int F, int Z, int S, int N,
                           std::optional<int> g = std::nullopt);

} // namespace sccpda
