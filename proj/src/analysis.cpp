#include "sccpda/analysis.hpp"

#include "sccpda/errors.hpp"

#include <algorithm>

namespace sccpda {

namespace {

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t acc = 1;
  for (int i = 0; i < exp; ++i)
    acc *= base;
  return acc;
}

// (b - a) x (c - a) sign in the (M, R) plane.
Rational cross(const RatePoint &a, const RatePoint &b, const RatePoint &c) {
  return (b.M - a.M) * (c.R - a.R) - (b.R - a.R) * (c.M - a.M);
}

} // namespace

RatePoint mn_rate_point(int K, int N, int t) {
  if (N < 1 || K < 2)
    throw DomainError("rate point needs N >= 1 and K >= 2");
  if (t < 0 || t > K - 2)
    throw DomainError("t=" + std::to_string(t) + " outside [0, K-2]");
  RatePoint p;
  p.M = Rational(std::int64_t{N} * t, K - t) + 1;
  p.R = Rational(K) * (N + p.M - 1) / (N + (K + 1) * (p.M - 1));
  p.scheme = "mn-eq1";
  p.subpkt = binomial(K - 1, t);
  p.t = t;
  return p;
}

RatePoint mn_endpoint(int K, int N) {
  if (N < 1 || K < 2)
    throw DomainError("endpoint needs N >= 1 and K >= 2");
  return RatePoint{Rational(std::int64_t{N} * (K - 1)), Rational(1), "mn-eq1", 1, std::nullopt};
}

std::vector<RatePoint> mn_rate_points(int K, int N) {
  std::vector<RatePoint> out;
  for (int t = 0; t <= K - 2; ++t)
    out.push_back(mn_rate_point(K, N, t));
  out.push_back(mn_endpoint(K, N));
  return out;
}

RatePoint secret_rate_point(const SchemeParams &p) {
  return RatePoint{p.M, p.rate_secret, "pda-secret", p.subpkt_secret, std::nullopt};
}

RatePoint plain_rate_point(const SchemeParams &p) {
  return RatePoint{p.M_plain, p.rate_plain, "pda-plain", p.subpkt_plain, std::nullopt};
}

Envelope Envelope::lower_convex(std::vector<RatePoint> points) {
  if (points.empty())
    throw DomainError("envelope of an empty point set");
  std::sort(points.begin(), points.end(), [](const RatePoint &a, const RatePoint &b) {
    return a.M < b.M || (a.M == b.M && a.R < b.R);
  });
  std::vector<RatePoint> hull;
  for (const auto &p : points) {
    if (!hull.empty() && hull.back().M == p.M)
      continue; // same memory, larger rate
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0)
      hull.pop_back();
    hull.push_back(p);
  }
  // Past the minimum rate, spare memory is simply left unused.
  const auto best = std::min_element(hull.begin(), hull.end(),
                                     [](const RatePoint &a, const RatePoint &b) { return a.R < b.R; });
  hull.erase(best + 1, hull.end());
  Envelope e;
  e.vertices_ = std::move(hull);
  return e;
}

Rational Envelope::eval(const Rational &M) const {
  if (M < vertices_.front().M)
    throw DomainError("memory " + to_string(M) + " below the envelope's range (starts at " +
                      to_string(vertices_.front().M) + ")");
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    const auto &a = vertices_[i];
    const auto &b = vertices_[i + 1];
    if (M <= b.M)
      return a.R + (b.R - a.R) * (M - a.M) / (b.M - a.M);
  }
  return vertices_.back().R;
}

std::vector<std::string> ComparisonRow::discrepancies() const {
  std::vector<std::string> out;
  for (const auto &c : checks)
    if (c.compared() && !c.matches())
      out.push_back(c.name + ": table prints " + to_string(*c.printed) + ", formula gives " +
                    to_string(*c.formula));
  return out;
}

ComparisonRow table1_row(int row, int param, int N) {
  if (N < 1)
    throw DomainError("N must be >= 1");
  ComparisonRow r;
  r.row = row;
  r.N = N;
  const std::int64_t q = param;
  const std::int64_t n = param;
  // Printed closed forms, in the row's own parameter.
  Rational pM, pRmn, pRpda;
  std::optional<Rational> pFmn;
  Rational pFpda;
  std::int64_t pK = 0;
  std::string fmn_note;
  switch (row) {
  case 1:
    if (q < 2)
      throw DomainError("row 1 needs q >= 2");
    r.pda_label = "2-(2q,q,1,q^2-q)";
    r.parameter = "q=" + std::to_string(q);
    r.K = static_cast<int>(2 * q);
    r.F = static_cast<int>(q);
    r.Z = 1;
    r.S = static_cast<int>(q * q - q);
    pK = 2 * q;
    pM = 1 + Rational(N, q - 1);
    pRmn = Rational(2 * q, 3);
    pRpda = Rational(q);
    pFmn = Rational((q - 1) * (2 * q - 1));
    pFpda = Rational(q);
    break;
  case 2:
    if (q < 2)
      throw DomainError("row 2 needs q >= 2");
    r.pda_label = "2-(2q,q^2-q,(q-1)^2,q)";
    r.parameter = "q=" + std::to_string(q);
    r.K = static_cast<int>(2 * q);
    r.F = static_cast<int>(q * q - q);
    r.Z = static_cast<int>((q - 1) * (q - 1));
    r.S = static_cast<int>(q);
    pK = 2 * q;
    pM = 1 + Rational(N) * (q - 1);
    pRmn = Rational(q) / (Rational(q - 1) + Rational(1, 2));
    pRpda = Rational(q, q - 1);
    pFmn = Rational(2 * q - 1);
    pFpda = Rational(q);
    break;
  case 3:
    if (n < 3)
      throw DomainError("row 3 needs n >= 3");
    r.pda_label = "3-(C(n,2),n,2,C(n,3))";
    r.parameter = "n=" + std::to_string(n);
    r.K = static_cast<int>(binomial(n, 2));
    r.F = static_cast<int>(n);
    r.Z = 2;
    r.S = static_cast<int>(binomial(n, 3));
    pK = n * (n - 1) / 2;
    pM = 1 + Rational(2 * N, n - 2);
    pRmn = Rational(n - 1, 2);
    pRpda = Rational(n * (n - 1), 6);
    fmn_note = "table gives only a binary-entropy approximation; exact binomial emitted";
    pFpda = Rational(n - 2);
    break;
  case 4:
    if (q < 2)
      throw DomainError("row 4 needs q >= 2");
    r.pda_label = "2-(2q,q^2,q,q^3-q^2)";
    r.parameter = "q=" + std::to_string(q);
    r.K = static_cast<int>(2 * q);
    r.F = static_cast<int>(q * q);
    r.Z = static_cast<int>(q);
    r.S = static_cast<int>(q * q * q - q * q);
    pK = 2 * q;
    pM = 1 + Rational(N, q - 1);
    pRmn = Rational(q * q, 2 * (q + 1));
    pRpda = Rational(q);
    pFmn = Rational((q - 1) * (2 * q - 1));
    pFpda = Rational(q * (q - 1));
    break;
  default:
    throw DomainError("comparison table has rows 1..4, not " + std::to_string(row));
  }

  const auto sp = derive_params(r.K, r.F, r.Z, r.S, N);
  r.M = sp.M;
  r.R_pda = sp.rate_secret;
  r.F_pda = sp.subpkt_secret;
  r.t = Rational(r.K) * (r.M - 1) / (N + r.M - 1);
  r.integer_t = r.t.denominator() == 1 && r.t >= 0 && r.t <= r.K - 2;
  if (r.integer_t) {
    const auto mn = mn_rate_point(r.K, N, static_cast<int>(r.t.numerator()));
    if (mn.M != r.M)
      throw InternalFault("MN memory disagrees with the PDA memory");
    r.R_mn = mn.R;
    r.F_mn = mn.subpkt;
  }

  r.checks.push_back({"K", Rational(r.K), Rational(pK), ""});
  r.checks.push_back({"M", r.M, pM, ""});
  r.checks.push_back({"R_mn", r.R_mn, pRmn, r.integer_t ? "" : "t is not an integer in [0, K-2]"});
  r.checks.push_back({"R_pda", r.R_pda, pRpda, ""});
  std::optional<Rational> fmn;
  if (r.F_mn)
    fmn = Rational(*r.F_mn);
  r.checks.push_back({"F_mn", fmn, pFmn, fmn_note});
  r.checks.push_back({"F_pda", Rational(r.F_pda), pFpda, ""});
  return r;
}

bool Table2Row::consistent() const {
  auto same = [](const Table2Column &a, const Table2Column &b) {
    return a.M == b.M && a.subpkt == b.subpkt && a.R == b.R;
  };
  return same(plain, plain_closed) && same(secret, secret_closed) && subpkt_gap == Z;
}

Table2Row table2(int q, int m, int N) {
  if (q < 2 || m < 1)
    throw DomainError("table2 needs q >= 2 and m >= 1");
  if (N < 1)
    throw DomainError("N must be >= 1");
  Table2Row row;
  row.q = q;
  row.m = m;
  row.N = N;
  row.K = q * (m + 1);
  row.F = static_cast<int>(ipow(q, m));
  row.Z = static_cast<int>(ipow(q, m - 1));
  row.S = static_cast<int>(ipow(q, m + 1) - ipow(q, m));
  const auto sp = derive_params(row.K, row.F, row.Z, row.S, N, m + 1);
  row.plain = {sp.M_plain, sp.subpkt_plain, sp.rate_plain};
  row.secret = {sp.M, sp.subpkt_secret, sp.rate_secret};
  row.plain_closed = {Rational(N, q), ipow(q, m), Rational(q - 1)};
  row.secret_closed = {1 + Rational(N, q - 1), ipow(q, m) - ipow(q, m - 1), Rational(q)};
  row.subpkt_gap = row.plain.subpkt - row.secret.subpkt;
  return row;
}

} // namespace sccpda
