#include "sccpda/pda.hpp"

#include "sccpda/errors.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace sccpda {

PdaEntry PdaEntry::integer(int s) {
  if (s < 1)
    throw std::invalid_argument("PDA integer entries must be >= 1");
  return PdaEntry(s);
}

Pda Pda::from_grid(std::vector<std::vector<PdaEntry>> rows, std::optional<int> declared_s) {
  if (rows.empty() || rows.front().empty())
    throw std::invalid_argument("PDA grid must have at least one row and one column");
  Pda p;
  p.f_ = static_cast<int>(rows.size());
  p.k_ = static_cast<int>(rows.front().size());
  p.grid_.reserve(static_cast<std::size_t>(p.f_) * p.k_);
  int max_label = 0;
  for (const auto &row : rows) {
    if (static_cast<int>(row.size()) != p.k_)
      throw std::invalid_argument("PDA grid rows have different lengths");
    for (PdaEntry e : row) {
      max_label = std::max(max_label, e.value());
      p.grid_.push_back(e);
    }
  }
  p.s_ = declared_s.value_or(max_label);
  return p;
}

int Pda::z() const { return stars_in_column(0); }

int Pda::stars_in_column(int k) const {
  int n = 0;
  for (int j = 0; j < f_; ++j)
    n += at(j, k).is_star() ? 1 : 0;
  return n;
}

std::vector<Cell> Pda::occurrences(int s) const {
  std::vector<Cell> out;
  for (int j = 0; j < f_; ++j)
    for (int k = 0; k < k_; ++k)
      if (at(j, k).value() == s)
        out.push_back({j + 1, k + 1});
  return out;
}

std::vector<int> Pda::labels_in_column(int k) const {
  std::set<int> labels;
  for (int j = 0; j < f_; ++j)
    if (at(j, k).is_integer())
      labels.insert(at(j, k).value());
  return {labels.begin(), labels.end()};
}

Pda parse_pda(std::string_view text) {
  std::vector<std::vector<std::int64_t>> raw; // 0 encodes '*'
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    std::istringstream tokens(line);
    std::vector<std::int64_t> row;
    std::string tok;
    while (tokens >> tok) {
      if (tok == "*") {
        row.push_back(0);
        continue;
      }
      std::int64_t v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 1)
        throw IoError("line " + std::to_string(line_no) + ": bad PDA token '" + tok + "'");
      row.push_back(v);
    }
    if (!raw.empty() && row.size() != raw.front().size())
      throw IoError("line " + std::to_string(line_no) + ": expected " +
                    std::to_string(raw.front().size()) + " tokens, found " +
                    std::to_string(row.size()));
    raw.push_back(std::move(row));
  }
  if (raw.empty())
    throw IoError("PDA input is empty");

  std::vector<std::int64_t> order; // distinct labels, first appearance
  std::set<std::int64_t> seen;
  for (const auto &row : raw)
    for (auto v : row)
      if (v != 0 && seen.insert(v).second)
        order.push_back(v);
  const bool contiguous = seen.empty() || *seen.rbegin() == static_cast<std::int64_t>(seen.size());

  std::map<std::int64_t, int> relabel;
  if (!contiguous)
    for (std::size_t i = 0; i < order.size(); ++i)
      relabel[order[i]] = static_cast<int>(i + 1);

  std::vector<std::vector<PdaEntry>> grid;
  for (const auto &row : raw) {
    auto &out = grid.emplace_back();
    for (auto v : row) {
      if (v == 0)
        out.push_back(PdaEntry::star());
      else
        out.push_back(PdaEntry::integer(contiguous ? static_cast<int>(v) : relabel.at(v)));
    }
  }
  Pda p = Pda::from_grid(std::move(grid), static_cast<int>(seen.size()));
  p.relabel_ = std::move(relabel);
  return p;
}

std::string serialize_pda(const Pda &p) {
  std::string out;
  for (int j = 0; j < p.rows(); ++j) {
    for (int k = 0; k < p.cols(); ++k) {
      if (k > 0)
        out += ' ';
      const PdaEntry e = p.at(j, k);
      out += e.is_star() ? std::string("*") : std::to_string(e.value());
    }
    out += '\n';
  }
  return out;
}

ValidationReport validate(const Pda &p) {
  ValidationReport report;
  const int z = p.z();
  for (int k = 0; k < p.cols(); ++k) {
    const int stars = p.stars_in_column(k);
    if (stars == z)
      continue;
    Violation v{"C1", {}, "column " + std::to_string(k + 1) + " has " + std::to_string(stars) +
                              " stars, column 1 has " + std::to_string(z)};
    for (int j = 0; j < p.rows(); ++j)
      if (p.at(j, k).is_star())
        v.cells.push_back({j + 1, k + 1});
    report.violations.push_back(std::move(v));
  }

  std::map<int, std::vector<Cell>> by_label;
  for (int j = 0; j < p.rows(); ++j)
    for (int k = 0; k < p.cols(); ++k)
      if (p.at(j, k).is_integer())
        by_label[p.at(j, k).value()].push_back({j + 1, k + 1});

  for (int s = 1; s <= p.s(); ++s)
    if (!by_label.contains(s))
      report.violations.push_back({"C2", {}, "integer " + std::to_string(s) + " does not occur"});
  for (const auto &[s, cells] : by_label)
    if (s > p.s())
      report.violations.push_back(
          {"C2", cells, "integer " + std::to_string(s) + " exceeds S=" + std::to_string(p.s())});

  for (const auto &[s, cells] : by_label) {
    for (std::size_t a = 0; a < cells.size(); ++a)
      for (std::size_t b = a + 1; b < cells.size(); ++b) {
        const Cell c1 = cells[a];
        const Cell c2 = cells[b];
        if (c1.row == c2.row || c1.col == c2.col) {
          report.violations.push_back(
              {"C3a", {c1, c2},
               "integer " + std::to_string(s) + " repeats in the same " +
                   (c1.row == c2.row ? "row" : "column")});
          continue;
        }
        const Cell x1{c1.row, c2.col};
        const Cell x2{c2.row, c1.col};
        const bool cross_ok = p.at(x1.row - 1, x1.col - 1).is_star() &&
                              p.at(x2.row - 1, x2.col - 1).is_star();
        if (!cross_ok)
          report.violations.push_back({"C3b", {c1, c2, x1, x2},
                                       "integer " + std::to_string(s) +
                                           " lacks the star cross between its occurrences"});
      }
  }
  return report;
}

std::optional<int> regularity(const Pda &p) {
  std::map<int, int> counts;
  for (int j = 0; j < p.rows(); ++j)
    for (int k = 0; k < p.cols(); ++k)
      if (p.at(j, k).is_integer())
        ++counts[p.at(j, k).value()];
  if (counts.empty())
    return std::nullopt;
  const int g = counts.begin()->second;
  for (const auto &[label, n] : counts)
    if (n != g)
      return std::nullopt;
  return g;
}

namespace {

// All size-t subsets of {1..K} in lexicographic order.
std::vector<std::vector<int>> subsets(int K, int t) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(t));
  for (int i = 0; i < t; ++i)
    cur[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = t - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == K - t + i + 1)
      --i;
    if (i < 0)
      break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < t; ++j)
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

} // namespace

Pda mn_pda(int K, int t) {
  if (K < 1)
    throw DomainError("mn_pda: K must be >= 1");
  if (t < 0 || t > K - 1)
    throw DomainError("mn_pda: t=" + std::to_string(t) + " outside [0, K-1] for K=" +
                      std::to_string(K));
  if (binomial(K, t) > 1'000'000 || binomial(K, t + 1) > 1'000'000)
    throw DomainError("mn_pda: array too large");

  std::map<std::vector<int>, int> phi;
  for (const auto &set : subsets(K, t + 1))
    phi.emplace(set, static_cast<int>(phi.size()) + 1);

  std::vector<std::vector<PdaEntry>> grid;
  for (const auto &row_set : subsets(K, t)) {
    auto &row = grid.emplace_back();
    for (int k = 1; k <= K; ++k) {
      if (std::binary_search(row_set.begin(), row_set.end(), k)) {
        row.push_back(PdaEntry::star());
        continue;
      }
      std::vector<int> u = row_set;
      u.insert(std::upper_bound(u.begin(), u.end(), k), k);
      row.push_back(PdaEntry::integer(phi.at(u)));
    }
  }
  return Pda::from_grid(std::move(grid), static_cast<int>(phi.size()));
}

SchemeParams derive_params(int K, int F, int Z, int S, int N, std::optional<int> g) {
  if (N < 1)
    throw DomainError("library size N must be >= 1");
  if (K < 1 || F < 1 || Z < 0 || S < 1)
    throw DomainError("PDA parameters must satisfy K, F, S >= 1 and Z >= 0");
  if (F <= Z)
    throw DomainError("F - Z must be positive (the array has no integer entries)");
  SchemeParams sp;
  sp.K = K;
  sp.F = F;
  sp.Z = Z;
  sp.S = S;
  sp.N = N;
  sp.g = g;
  sp.M = Rational(std::int64_t{N} * Z, F - Z) + 1;
  sp.rate_secret = Rational(S, F - Z);
  sp.M_plain = Rational(std::int64_t{N} * Z, F);
  sp.rate_plain = Rational(S, F);
  sp.subpkt_secret = F - Z;
  sp.subpkt_plain = F;
  return sp;
}

SchemeParams derive_params(const Pda &p, int N) {
  const auto report = validate(p);
  if (!report.valid())
    throw DomainError("not a valid PDA: " + report.violations.front().condition + " " +
                      report.violations.front().detail);
  return derive_params(p.cols(), p.rows(), p.z(), p.s(), N, regularity(p));
}

} // namespace sccpda
