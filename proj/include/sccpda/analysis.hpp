#pragma once

#include "sccpda/pda.hpp"
#include "sccpda/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sccpda {

struct RatePoint {
  Rational M;
  Rational R;
  std::string scheme; // "pda-secret", "pda-plain", or "mn-eq1"
  std::int64_t subpkt = 0;
  std::optional<int> t;
};

// Secretive MN scheme at M = Nt/(K-t) + 1, R = K(N+M-1)/(N+(K+1)(M-1)),
// subpacketization C(K-1, t). Requires 0 <= t <= K-2.
RatePoint mn_rate_point(int K, int N, int t);
// Endpoint M = N(K-1), R = 1 (subpacketization 1). Requires K >= 2.
RatePoint mn_endpoint(int K, int N);
// All of the above for t = 0..K-2, then the endpoint.
std::vector<RatePoint> mn_rate_points(int K, int N);

RatePoint secret_rate_point(const SchemeParams &p);
RatePoint plain_rate_point(const SchemeParams &p);

// Lower convex envelope of achievable (M, R) points under memory sharing.
// Memory beyond the largest vertex can go unused, so the envelope stays
// flat to the right of its minimum-rate vertex.
class Envelope {
public:
  // Throws DomainError for an empty point list.
  static Envelope lower_convex(std::vector<RatePoint> points);

  const std::vector<RatePoint> &vertices() const { return vertices_; }
  Rational min_memory() const { return vertices_.front().M; }
  // Throws DomainError for M below min_memory().
  Rational eval(const Rational &M) const;

private:
  std::vector<RatePoint> vertices_;
};

// One quantity of a comparison row: the value from the formulas, and the
// value the expected table prints for it when that is a closed form.
struct TableCheck {
  std::string name;
  std::optional<Rational> formula;
  std::optional<Rational> printed;
  std::string note;
  bool matches() const { return formula && printed && *formula == *printed; }
  bool compared() const { return formula.has_value() && printed.has_value(); }
};

struct ComparisonRow {
  int row = 0;           // 1..4
  std::string pda_label; // g-(K,F,Z,S) family
  std::string parameter; // e.g. "q=3"
  int K = 0, F = 0, Z = 0, S = 0, N = 0;
  Rational M;
  Rational t;
  bool integer_t = false;
  std::optional<Rational> R_mn;
  Rational R_pda;
  std::optional<std::int64_t> F_mn;
  std::int64_t F_pda = 0;
  std::vector<TableCheck> checks;

  // Checks where the formula and the printed value disagree.
  std::vector<std::string> discrepancies() const;
};

// Rows of the PDA-versus-MN comparison table. Rows 1, 2 and 4 take q >= 2;
// row 3 takes n >= 3. N is the library size.
ComparisonRow table1_row(int row, int param, int N);

struct Table2Column {
  Rational M;
  std::int64_t subpkt = 0;
  Rational R;
};

struct Table2Row {
  int q = 0, m = 0, N = 0, K = 0;
  int F = 0, Z = 0, S = 0;
  Table2Column plain;   // from the (K,F,Z,S) tuple
  Table2Column secret;  // from the (K,F,Z,S) tuple
  Table2Column plain_closed;  // N/q, q^m, q-1
  Table2Column secret_closed; // 1+N/(q-1), q^m-q^(m-1), q
  std::int64_t subpkt_gap = 0; // plain - secret

  bool consistent() const;
};

// Secrecy cost for the (m+1)-regular (q(m+1), q^m, q^(m-1), q^(m+1)-q^m)
// PDA family. Requires q >= 2, m >= 1.
Table2Row table2(int q, int m, int N);

} // namespace sccpda
