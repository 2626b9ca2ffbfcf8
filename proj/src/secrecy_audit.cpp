#include "sccpda/secrecy_audit.hpp"

#include "sccpda/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

namespace sccpda {

std::string Observer::label() const {
  return is_eavesdropper() ? std::string("eavesdropper") : "user " + std::to_string(user);
}

std::string Ablation::describe() const {
  if (empty())
    return "intact";
  std::string out;
  auto add = [&](const std::string &s) { out += (out.empty() ? "" : ", ") + s; };
  for (int s : unkeyed_slots)
    add("X_" + std::to_string(s) + " sent without T_" + std::to_string(s));
  for (int s : granted_keys)
    add("observer holds T_" + std::to_string(s));
  for (int n : exposed_keyvecs)
    add("observer holds V^" + std::to_string(n));
  for (const auto &r : granted_shares)
    add("observer holds S^" + std::to_string(r.file) + "_" + std::to_string(r.share));
  return out;
}

std::string Unknown::label() const {
  switch (kind) {
  case Kind::W:
    return "W^" + std::to_string(file) + "_" + std::to_string(index);
  case Kind::V:
    return "V^" + std::to_string(file) + "_" + std::to_string(index);
  case Kind::T:
    break;
  }
  return "T_" + std::to_string(index);
}

namespace {

// Column layout over all unknowns: per file n its F-Z subfiles then its Z
// keys, then T_1..T_S.
struct Layout {
  int N, F, Z, S;
  std::size_t w(int n, int i) const { return static_cast<std::size_t>((n - 1) * F + (i - 1)); }
  std::size_t v(int n, int i) const { return static_cast<std::size_t>((n - 1) * F + (F - Z) + (i - 1)); }
  std::size_t t(int s) const { return static_cast<std::size_t>(N * F + (s - 1)); }
  std::size_t total() const { return static_cast<std::size_t>(N * F + S); }

  Unknown unknown(std::size_t col) const {
    if (col >= static_cast<std::size_t>(N * F))
      return {Unknown::Kind::T, 0, static_cast<int>(col) - N * F + 1};
    const int n = static_cast<int>(col) / F + 1;
    const int within = static_cast<int>(col) % F;
    if (within < F - Z)
      return {Unknown::Kind::W, n, within + 1};
    return {Unknown::Kind::V, n, within - (F - Z) + 1};
  }
};

std::vector<Element> share_row(const Layout &lay, const CauchyMatrix &g, int n, int j) {
  std::vector<Element> row(lay.total());
  for (int c = 0; c < lay.F; ++c) {
    const std::size_t col = c < lay.F - lay.Z ? lay.w(n, c + 1) : lay.v(n, c - (lay.F - lay.Z) + 1);
    row[col] = g.entries.at(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(c));
  }
  return row;
}

std::string share_label(int n, int j) {
  return "S^" + std::to_string(n) + "_" + std::to_string(j);
}

ObservationSystem partition(const Field &field, Observer observer, std::vector<int> demand,
                            const std::vector<std::vector<Element>> &rows,
                            std::vector<std::string> labels, const std::vector<Unknown> &unknowns,
                            const std::vector<bool> &is_protected) {
  ObservationSystem obs;
  obs.observer = observer;
  obs.demand = std::move(demand);
  obs.field = field;
  obs.observations = std::move(labels);
  std::vector<std::size_t> pcols, ccols;
  for (std::size_t c = 0; c < unknowns.size(); ++c) {
    if (is_protected[c]) {
      pcols.push_back(c);
      obs.protected_unknowns.push_back(unknowns[c]);
    } else {
      ccols.push_back(c);
      obs.cover_unknowns.push_back(unknowns[c]);
    }
  }
  obs.A = Matrix(rows.size(), pcols.size());
  obs.Bmat = Matrix(rows.size(), ccols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < pcols.size(); ++c)
      obs.A.at(i, c) = rows[i][pcols[c]];
    for (std::size_t c = 0; c < ccols.size(); ++c)
      obs.Bmat.at(i, c) = rows[i][ccols[c]];
  }
  return obs;
}

std::vector<std::pair<Element, std::string>> nonzero_terms(std::span<const Element> coeffs,
                                                           const std::vector<std::string> &labels) {
  std::vector<std::pair<Element, std::string>> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (!coeffs[i].is_zero())
      out.emplace_back(coeffs[i], labels[i]);
  return out;
}

} // namespace

ObservationSystem build_observation(const Pda &pda, int N, const CauchyMatrix &g, Observer observer,
                                    const std::vector<int> &demand, const Ablation &ablation) {
  check_demand(pda, N, demand);
  if (!observer.is_eavesdropper() && (observer.user < 1 || observer.user > pda.cols()))
    throw DomainError("observer " + observer.label() + " does not exist");
  const Layout lay{N, pda.rows(), pda.z(), pda.s()};
  if (g.entries.rows() != static_cast<std::size_t>(lay.F) || g.entries.cols() != g.entries.rows())
    throw std::invalid_argument("build_observation: G must be F x F");
  const Field &field = g.field;

  std::vector<std::vector<Element>> rows;
  std::vector<std::string> labels;
  auto unit = [&](std::size_t col) {
    std::vector<Element> row(lay.total());
    row[col] = field.one();
    return row;
  };

  if (!observer.is_eavesdropper()) {
    const int k = observer.user;
    for (int j = 1; j <= lay.F; ++j)
      if (pda.at(j - 1, k - 1).is_star())
        for (int n = 1; n <= N; ++n) {
          rows.push_back(share_row(lay, g, n, j));
          labels.push_back(share_label(n, j) + " (cached)");
        }
    for (int s : pda.labels_in_column(k - 1)) {
      rows.push_back(unit(lay.t(s)));
      labels.push_back("T_" + std::to_string(s) + " (cached)");
    }
  }
  for (const auto &ref : ablation.granted_shares) {
    rows.push_back(share_row(lay, g, ref.file, ref.share));
    labels.push_back(share_label(ref.file, ref.share) + " (granted)");
  }
  for (int s : ablation.granted_keys) {
    rows.push_back(unit(lay.t(s)));
    labels.push_back("T_" + std::to_string(s) + " (granted)");
  }
  for (int n : ablation.exposed_keyvecs)
    for (int i = 1; i <= lay.Z; ++i) {
      rows.push_back(unit(lay.v(n, i)));
      labels.push_back("V^" + std::to_string(n) + "_" + std::to_string(i) + " (granted)");
    }

  const std::set<int> unkeyed(ablation.unkeyed_slots.begin(), ablation.unkeyed_slots.end());
  for (int s = 1; s <= lay.S; ++s) {
    std::vector<Element> row(lay.total());
    for (const Cell c : pda.occurrences(s)) {
      const auto sr = share_row(lay, g, demand[static_cast<std::size_t>(c.col - 1)], c.row);
      for (std::size_t i = 0; i < row.size(); ++i)
        row[i] = field.add(row[i], sr[i]);
    }
    if (!unkeyed.contains(s))
      row[lay.t(s)] = field.add(row[lay.t(s)], field.one());
    rows.push_back(std::move(row));
    labels.push_back("X_" + std::to_string(s));
  }

  std::vector<Unknown> unknowns;
  std::vector<bool> is_protected;
  for (std::size_t c = 0; c < lay.total(); ++c) {
    const Unknown u = lay.unknown(c);
    unknowns.push_back(u);
    const bool file_unknown = u.kind == Unknown::Kind::W;
    const bool own_file =
        !observer.is_eavesdropper() && u.file == demand[static_cast<std::size_t>(observer.user - 1)];
    is_protected.push_back(file_unknown && !own_file);
  }
  return partition(field, observer, demand, rows, std::move(labels), unknowns, is_protected);
}

ObservationSystem share_subset_observation(const CauchyMatrix &g, int Z, const std::vector<int> &rows) {
  const int F = static_cast<int>(g.entries.rows());
  if (Z < 0 || Z >= F)
    throw std::invalid_argument("share_subset_observation: need 0 <= Z < F");
  const Layout lay{1, F, Z, 0};
  std::vector<std::vector<Element>> obs_rows;
  std::vector<std::string> labels;
  for (int j : rows) {
    if (j < 1 || j > F)
      throw std::invalid_argument("share_subset_observation: row out of range");
    obs_rows.push_back(share_row(lay, g, 1, j));
    labels.push_back(share_label(1, j));
  }
  std::vector<Unknown> unknowns;
  std::vector<bool> is_protected;
  for (std::size_t c = 0; c < lay.total(); ++c) {
    unknowns.push_back(lay.unknown(c));
    is_protected.push_back(unknowns.back().kind == Unknown::Kind::W);
  }
  return partition(g.field, Observer::eavesdropper(), {}, obs_rows, std::move(labels), unknowns,
                   is_protected);
}

LeakageReport certify_zero_leakage(const ObservationSystem &obs) {
  const Field &f = obs.field;
  const std::size_t m = obs.observations.size();
  const std::size_t nb = obs.Bmat.cols();
  const std::size_t na = obs.A.cols();

  // Reduce [Bmat | A | I] using pivots from the cover block only; rows left
  // with a zero cover part are combinations of observations that depend on
  // protected unknowns alone.
  Matrix work(m, nb + na + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t c = 0; c < nb; ++c)
      work.at(i, c) = obs.Bmat.at(i, c);
    for (std::size_t c = 0; c < na; ++c)
      work.at(i, nb + c) = obs.A.at(i, c);
    work.at(i, nb + na + i) = f.one();
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < nb && rank < m; ++col) {
    std::size_t pivot = rank;
    while (pivot < m && work.at(pivot, col).is_zero())
      ++pivot;
    if (pivot == m)
      continue;
    for (std::size_t j = 0; j < work.cols(); ++j)
      std::swap(work.at(pivot, j), work.at(rank, j));
    const Element scale = f.inv(work.at(rank, col));
    for (std::size_t i = rank + 1; i < m; ++i) {
      const Element factor = f.mul(work.at(i, col), scale);
      if (factor.is_zero())
        continue;
      for (std::size_t j = col; j < work.cols(); ++j)
        work.at(i, j) = f.sub(work.at(i, j), f.mul(factor, work.at(rank, j)));
    }
    ++rank;
  }

  LeakageReport rep;
  rep.observer = obs.observer;
  rep.demand = obs.demand;
  rep.rank_cover = rank;
  // Remaining rows have zero cover part; their protected part has rank
  // rank_total - rank_cover.
  Matrix residual(m - rank, na);
  for (std::size_t i = rank; i < m; ++i)
    for (std::size_t c = 0; c < na; ++c)
      residual.at(i - rank, c) = work.at(i, nb + c);
  rep.rank_total = rank + mat_rank(f, residual);
  rep.leak_free = rep.rank_total == rep.rank_cover;
  rep.leaked_bits = (rep.rank_total - rep.rank_cover) * f.degree();

  if (!rep.leak_free) {
    std::vector<std::string> plabels;
    for (const auto &u : obs.protected_unknowns)
      plabels.push_back(u.label());
    for (std::size_t i = rank; i < m; ++i) {
      const auto row = work.row(i);
      const auto a_part = row.subspan(nb, na);
      if (std::all_of(a_part.begin(), a_part.end(), [](Element e) { return e.is_zero(); }))
        continue;
      rep.witness = Witness{nonzero_terms(row.subspan(nb + na, m), obs.observations),
                            nonzero_terms(a_part, plabels)};
      break;
    }
  }
  return rep;
}

std::vector<std::vector<int>> demand_set(int N, int K, std::uint64_t seed) {
  if (N < 1 || K < 1)
    throw DomainError("demand_set needs N, K >= 1");
  std::uint64_t space = 1;
  bool small = true;
  for (int k = 0; k < K && small; ++k) {
    space *= static_cast<std::uint64_t>(N);
    small = space <= 4096;
  }
  std::vector<std::vector<int>> out;
  if (small) {
    std::vector<int> d(static_cast<std::size_t>(K), 1);
    while (true) {
      out.push_back(d);
      int i = K - 1;
      while (i >= 0 && d[static_cast<std::size_t>(i)] == N)
        d[static_cast<std::size_t>(i--)] = 1;
      if (i < 0)
        break;
      ++d[static_cast<std::size_t>(i)];
    }
    return out;
  }
  std::set<std::vector<int>> seen;
  std::mt19937_64 rng(seed);
  auto add = [&](std::vector<int> d) {
    if (seen.insert(d).second)
      out.push_back(std::move(d));
  };
  for (int i = 0; i < 256; ++i) {
    std::vector<int> d(static_cast<std::size_t>(K));
    for (auto &x : d)
      x = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(N));
    add(std::move(d));
  }
  for (int n = 1; n <= N; ++n)
    add(std::vector<int>(static_cast<std::size_t>(K), n));
  return out;
}

bool AuditResult::all_leak_free() const {
  return std::all_of(reports.begin(), reports.end(), [](const auto &r) { return r.leak_free; });
}

std::size_t AuditResult::leaking() const {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const auto &r) { return !r.leak_free; }));
}

AuditResult audit_system(const Pda &pda, int N, const CauchyMatrix &g,
                         const std::vector<std::vector<int>> &demands, const Ablation &ablation,
                         bool include_eavesdropper) {
  AuditResult res;
  std::vector<Observer> observers;
  for (int k = 1; k <= pda.cols(); ++k)
    observers.push_back(Observer::of_user(k));
  if (include_eavesdropper)
    observers.push_back(Observer::eavesdropper());
  for (const Observer o : observers)
    for (const auto &d : demands)
      res.reports.push_back(certify_zero_leakage(build_observation(pda, N, g, o, d, ablation)));
  return res;
}

std::uint64_t enumeration_bits(const SystemConfig &cfg) {
  const auto p = SharingParams::make(cfg.pda.rows(), cfg.pda.z(), cfg.field, cfg.B);
  const std::uint64_t sym_bits = p.share_bits();
  return static_cast<std::uint64_t>(cfg.N) * cfg.B +
         (static_cast<std::uint64_t>(cfg.N) * static_cast<std::uint64_t>(p.Z) +
          static_cast<std::uint64_t>(cfg.pda.s())) *
             sym_bits;
}

MiResult brute_force_mi(const SystemConfig &cfg, Observer observer, const std::vector<int> &demand,
                        const Ablation &ablation, unsigned max_bits) {
  check_demand(cfg.pda, cfg.N, demand);
  const std::uint64_t total_bits = enumeration_bits(cfg);
  if (total_bits > max_bits || total_bits > 40)
    throw DomainError("exhaustive enumeration needs 2^" + std::to_string(total_bits) +
                      " states (limit 2^" + std::to_string(max_bits) + ")");
  const auto p = SharingParams::make(cfg.pda.rows(), cfg.pda.z(), cfg.field, cfg.B);
  const std::size_t len = p.symbols_per_subfile;
  const unsigned r = cfg.field.degree();
  const auto N = static_cast<std::size_t>(cfg.N);
  const auto S = static_cast<std::size_t>(cfg.pda.s());
  const std::set<int> unkeyed(ablation.unkeyed_slots.begin(), ablation.unkeyed_slots.end());

  std::map<std::vector<std::uint32_t>, std::uint64_t> joint, pmarg, omarg;
  const std::uint64_t states = std::uint64_t{1} << total_bits;
  for (std::uint64_t state = 0; state < states; ++state) {
    std::uint64_t bits = state;
    auto take = [&](unsigned width) {
      const auto v = static_cast<std::uint32_t>(bits & ((std::uint64_t{1} << width) - 1));
      bits >>= width;
      return v;
    };
    InjectedRandomness inj;
    inj.files.emplace();
    for (std::size_t n = 0; n < N; ++n) {
      Bits f(cfg.B);
      for (std::size_t i = 0; i < cfg.B; ++i)
        f.set(i, take(1) != 0);
      inj.files->push_back(std::move(f));
    }
    inj.keys.emplace();
    for (std::size_t n = 0; n < N; ++n) {
      KeyVector kv;
      for (int i = 0; i < p.Z; ++i) {
        Symbols s(len);
        for (auto &e : s)
          e = Element{take(r)};
        kv.parts.push_back(std::move(s));
      }
      inj.keys->push_back(std::move(kv));
    }
    inj.unique_keys.emplace();
    for (std::size_t s = 0; s < S; ++s) {
      Symbols sym(len);
      for (auto &e : sym)
        e = Element{take(r)};
      inj.unique_keys->push_back(std::move(sym));
    }

    const SystemState st = setup(cfg, inj);
    const Transcript t = deliver(st, demand);

    std::vector<std::uint32_t> view;
    auto append = [&](const Symbols &s) {
      for (Element e : s)
        view.push_back(e.value());
    };
    if (!observer.is_eavesdropper()) {
      const Cache &c = st.cache(observer.user);
      for (const auto &[ref, sym] : c.shares)
        append(sym);
      for (const auto &[slot, sym] : c.keys)
        append(sym);
    }
    for (const auto &ref : ablation.granted_shares)
      append(st.shares().at(static_cast<std::size_t>(ref.file - 1)).parts.at(static_cast<std::size_t>(ref.share - 1)));
    for (int s : ablation.granted_keys)
      append(st.unique_keys().at(static_cast<std::size_t>(s - 1)));
    for (int n : ablation.exposed_keyvecs)
      for (const auto &part : st.keyvecs().at(static_cast<std::size_t>(n - 1)).parts)
        append(part);
    for (const auto &m : t.messages) {
      Symbols payload = unpack_symbols(cfg.field, m.payload, len);
      if (unkeyed.contains(m.slot))
        payload = xor_symbols(payload, st.unique_keys()[static_cast<std::size_t>(m.slot - 1)]);
      append(payload);
    }

    std::vector<std::uint32_t> secret;
    for (std::size_t n = 0; n < N; ++n) {
      const bool own = !observer.is_eavesdropper() &&
                       static_cast<int>(n + 1) == demand[static_cast<std::size_t>(observer.user - 1)];
      if (own)
        continue;
      for (auto byte : st.files()[n].bytes())
        secret.push_back(byte);
    }

    ++pmarg[secret];
    ++omarg[view];
    auto key = secret;
    key.push_back(0xffffffffu); // separator
    key.insert(key.end(), view.begin(), view.end());
    ++joint[key];
  }

  MiResult res;
  res.states = states;
  const auto total = static_cast<long double>(states);
  long double mi = 0.0L;
  bool independent = joint.size() == pmarg.size() * omarg.size();
  for (const auto &[key, c] : joint) {
    const auto sep = std::find(key.begin(), key.end(), 0xffffffffu);
    const std::vector<std::uint32_t> secret(key.begin(), sep);
    const std::vector<std::uint32_t> view(sep + 1, key.end());
    const std::uint64_t cp = pmarg.at(secret);
    const std::uint64_t co = omarg.at(view);
    // c / T == (cp / T)(co / T)  <=>  c * T == cp * co
    if (static_cast<unsigned __int128>(c) * states != static_cast<unsigned __int128>(cp) * co)
      independent = false;
    const long double pj = static_cast<long double>(c) / total;
    mi += pj * std::log2(static_cast<long double>(c) * total /
                         (static_cast<long double>(cp) * static_cast<long double>(co)));
  }
  res.exact_zero = independent;
  res.bits = independent ? 0.0 : static_cast<double>(mi);
  return res;
}

bool CrossValidation::all_agree() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto &c) { return c.agree; });
}

CrossValidation cross_validate(const SystemConfig &cfg, const std::vector<std::vector<int>> &demands,
                               const std::vector<Ablation> &ablations) {
  const auto p = SharingParams::make(cfg.pda.rows(), cfg.pda.z(), cfg.field, cfg.B);
  if (p.padded())
    throw DomainError("cross-validation needs unpadded files (B a multiple of (F-Z)*r)");
  const auto g = cauchy_build(cfg.field, static_cast<std::size_t>(cfg.pda.rows()),
                              static_cast<std::size_t>(cfg.pda.rows()), cfg.cauchy_x, cfg.cauchy_y);
  std::vector<Ablation> all{Ablation{}};
  for (const auto &a : ablations)
    if (!a.empty())
      all.push_back(a);

  std::vector<Observer> observers;
  for (int k = 1; k <= cfg.pda.cols(); ++k)
    observers.push_back(Observer::of_user(k));
  observers.push_back(Observer::eavesdropper());

  CrossValidation out;
  for (const auto &ab : all)
    for (const Observer o : observers)
      for (const auto &d : demands) {
        CrossCheck c;
        c.observer = o;
        c.demand = d;
        c.ablation = ab.describe();
        const auto rep = certify_zero_leakage(build_observation(cfg.pda, cfg.N, g, o, d, ab));
        c.rank_leak_free = rep.leak_free;
        c.rank_leaked_bits = rep.leaked_bits;
        c.mi = brute_force_mi(cfg, o, d, ab);
        const double expected = static_cast<double>(rep.leaked_bits * p.symbols_per_subfile);
        c.agree = rep.leak_free == c.mi.exact_zero && std::abs(c.mi.bits - expected) < 1e-9;
        out.checks.push_back(std::move(c));
      }
  return out;
}

} // namespace sccpda
