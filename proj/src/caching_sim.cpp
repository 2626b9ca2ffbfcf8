#include "sccpda/caching_sim.hpp"

#include "sccpda/errors.hpp"

#include <algorithm>
#include <random>

namespace sccpda {

namespace {

Bits random_file(std::size_t nbits, std::mt19937_64 &rng) {
  Bits f(nbits);
  for (std::size_t byte = 0; byte * 8 < nbits; ++byte) {
    const auto v = static_cast<std::uint32_t>(rng() & 0xff);
    const auto width = static_cast<unsigned>(std::min<std::size_t>(8, nbits - byte * 8));
    f.write_uint(byte * 8, width, v >> (8 - width));
  }
  return f;
}

Symbols random_symbols(const Field &field, std::size_t count, std::mt19937_64 &rng) {
  Symbols out(count);
  for (auto &e : out)
    e = Element{static_cast<std::uint32_t>(rng() & (field.order() - 1))};
  return out;
}

void check_symbols(const Field &field, const Symbols &s, std::size_t len, const std::string &what) {
  if (s.size() != len)
    throw DomainError(what + " has " + std::to_string(s.size()) + " symbols, expected " +
                      std::to_string(len));
  for (Element e : s)
    if (!field.contains(e))
      throw DomainError(what + " contains a value outside the field");
}

// Cells of each label, ordered by column then row.
std::vector<std::vector<Cell>> cells_by_label(const Pda &pda) {
  std::vector<std::vector<Cell>> out(static_cast<std::size_t>(pda.s()) + 1);
  for (int k = 0; k < pda.cols(); ++k)
    for (int j = 0; j < pda.rows(); ++j)
      if (pda.at(j, k).is_integer())
        out[static_cast<std::size_t>(pda.at(j, k).value())].push_back({j + 1, k + 1});
  return out;
}

} // namespace

SystemConfig SystemConfig::make(Pda pda, int N, std::size_t B, std::uint64_t seed,
                                std::optional<Field> field) {
  SystemConfig cfg;
  cfg.field = field ? *field : Field::with_min_order(2u * static_cast<unsigned>(pda.rows()));
  cfg.pda = std::move(pda);
  cfg.N = N;
  cfg.B = B;
  cfg.seed = seed;
  return cfg;
}

std::size_t Transcript::bits_sent() const {
  std::size_t n = 0;
  for (const auto &m : messages)
    n += m.payload.size();
  return n;
}

std::vector<std::uint8_t> Transcript::frames() const {
  std::vector<std::uint8_t> out;
  for (const auto &m : messages) {
    out.push_back(static_cast<std::uint8_t>((m.slot >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>(m.slot & 0xff));
    out.insert(out.end(), m.payload.bytes().begin(), m.payload.bytes().end());
  }
  return out;
}

SystemState::SystemState(const SystemConfig &cfg)
    : config_(cfg),
      params_(SharingParams::make(cfg.pda.rows(), cfg.pda.z(), cfg.field, cfg.B)),
      scheme_(derive_params(cfg.pda, cfg.N)),
      cauchy_(cauchy_build(cfg.field, static_cast<std::size_t>(cfg.pda.rows()),
                           static_cast<std::size_t>(cfg.pda.rows()), cfg.cauchy_x, cfg.cauchy_y)) {}

UserView SystemState::view_of(int user, const Transcript &t) const {
  return UserView(user, cache(user), t, config_.pda, cauchy_, params_);
}

SystemState setup(const SystemConfig &cfg, const InjectedRandomness &inject) {
  if (cfg.N < 1)
    throw DomainError("library size N must be >= 1");
  const auto report = validate(cfg.pda);
  if (!report.valid())
    throw DomainError("not a valid PDA: " + report.violations.front().condition + " " +
                      report.violations.front().detail);
  SystemState st(cfg);
  const auto &params = st.params_;
  const auto N = static_cast<std::size_t>(cfg.N);
  const std::size_t len = params.symbols_per_subfile;
  std::mt19937_64 rng(cfg.seed);

  if (inject.files) {
    if (inject.files->size() != N)
      throw DomainError("expected " + std::to_string(N) + " files");
    for (const auto &f : *inject.files)
      if (f.size() != cfg.B)
        throw DomainError("file size mismatch: " + std::to_string(f.size()) + " bits, expected " +
                          std::to_string(cfg.B));
    st.files_ = *inject.files;
  } else {
    for (std::size_t n = 0; n < N; ++n)
      st.files_.push_back(random_file(cfg.B, rng));
  }

  if (inject.keys) {
    if (inject.keys->size() != N)
      throw DomainError("expected encryption keys for " + std::to_string(N) + " files");
    for (std::size_t n = 0; n < N; ++n) {
      const auto &kv = (*inject.keys)[n];
      if (static_cast<int>(kv.parts.size()) != params.Z)
        throw DomainError("file " + std::to_string(n + 1) + " needs " + std::to_string(params.Z) +
                          " encryption keys");
      for (std::size_t i = 0; i < kv.parts.size(); ++i)
        check_symbols(params.field, kv.parts[i], len,
                      "V^" + std::to_string(n + 1) + "_" + std::to_string(i + 1));
    }
    st.keyvecs_ = *inject.keys;
  } else {
    for (std::size_t n = 0; n < N; ++n) {
      KeyVector kv;
      for (int i = 0; i < params.Z; ++i)
        kv.parts.push_back(random_symbols(params.field, len, rng));
      st.keyvecs_.push_back(std::move(kv));
    }
  }

  const auto S = static_cast<std::size_t>(cfg.pda.s());
  if (inject.unique_keys) {
    if (inject.unique_keys->size() != S)
      throw DomainError("expected " + std::to_string(S) + " unique keys");
    for (std::size_t s = 0; s < S; ++s)
      check_symbols(params.field, (*inject.unique_keys)[s], len, "T_" + std::to_string(s + 1));
    st.unique_keys_ = *inject.unique_keys;
  } else {
    for (std::size_t s = 0; s < S; ++s)
      st.unique_keys_.push_back(random_symbols(params.field, len, rng));
  }

  for (std::size_t n = 0; n < N; ++n) {
    st.secrets_.push_back(split_file(params, st.files_[n]));
    st.shares_.push_back(encode_file(params, st.cauchy_, st.secrets_[n], st.keyvecs_[n]));
  }

  const Pda &pda = cfg.pda;
  for (int k = 0; k < pda.cols(); ++k) {
    Cache c;
    c.user = k + 1;
    for (int j = 0; j < pda.rows(); ++j) {
      const PdaEntry e = pda.at(j, k);
      if (e.is_star()) {
        for (int n = 0; n < cfg.N; ++n)
          c.shares.emplace(ShareRef{n + 1, j + 1},
                           st.shares_[static_cast<std::size_t>(n)].parts[static_cast<std::size_t>(j)]);
      } else {
        c.keys.emplace(e.value(), st.unique_keys_[static_cast<std::size_t>(e.value() - 1)]);
      }
    }
    st.caches_.push_back(std::move(c));
  }
  return st;
}

void check_demand(const Pda &pda, int N, const std::vector<int> &demand) {
  if (static_cast<int>(demand.size()) != pda.cols())
    throw DomainError("demand has " + std::to_string(demand.size()) + " entries, expected K=" +
                      std::to_string(pda.cols()));
  for (int d : demand)
    if (d < 1 || d > N)
      throw DomainError("demand " + std::to_string(d) + " outside [1, " + std::to_string(N) + "]");
}

Transcript deliver(const SystemState &state, const std::vector<int> &demand) {
  const Pda &pda = state.config().pda;
  check_demand(pda, state.config().N, demand);
  const auto &params = state.params();
  const std::size_t len = params.symbols_per_subfile;

  Transcript t;
  t.demand = demand;
  t.payload_bits = params.share_bits();
  t.file_bits = params.file_bits;
  const auto cells = cells_by_label(pda);
  for (int s = 1; s <= pda.s(); ++s) {
    Message m;
    m.slot = s;
    m.key = s;
    Symbols acc(len);
    for (const Cell c : cells[static_cast<std::size_t>(s)]) {
      const int file = demand[static_cast<std::size_t>(c.col - 1)];
      m.terms.push_back({file, c.row});
      acc = xor_symbols(acc, state.shares()[static_cast<std::size_t>(file - 1)]
                                 .parts[static_cast<std::size_t>(c.row - 1)]);
    }
    acc = xor_symbols(acc, state.unique_keys()[static_cast<std::size_t>(s - 1)]);
    m.payload = pack_symbols(params.field, acc);
    t.messages.push_back(std::move(m));
  }
  return t;
}

Bits user_decode(const UserView &view) {
  const Pda &pda = view.pda_;
  const auto &params = view.params_;
  const Transcript &t = view.transcript_;
  const int k = view.user_;
  if (k < 1 || k > pda.cols())
    throw DomainError("user " + std::to_string(k) + " does not exist");
  if (static_cast<int>(t.demand.size()) != pda.cols())
    throw DomainError("transcript demand does not match the PDA");
  const int want = t.demand[static_cast<std::size_t>(k - 1)];
  const std::size_t len = params.symbols_per_subfile;
  const auto cells = cells_by_label(pda);

  auto cached_share = [&](ShareRef ref, Cell cell) -> const Symbols & {
    const auto it = view.cache_.shares.find(ref);
    if (it == view.cache_.shares.end())
      throw InternalFault("user " + std::to_string(k) + " lacks share S^" +
                          std::to_string(ref.file) + "_" + std::to_string(ref.share) +
                          " needed at cell (" + std::to_string(cell.row) + "," +
                          std::to_string(cell.col) + ")");
    return it->second;
  };

  ShareVector shares{std::vector<Symbols>(static_cast<std::size_t>(pda.rows()))};
  for (int j = 1; j <= pda.rows(); ++j) {
    const PdaEntry e = pda.at(j - 1, k - 1);
    const Cell here{j, k};
    if (e.is_star()) {
      shares.parts[static_cast<std::size_t>(j - 1)] = cached_share({want, j}, here);
      continue;
    }
    const int s = e.value();
    const auto msg = std::find_if(t.messages.begin(), t.messages.end(),
                                  [s](const Message &m) { return m.slot == s; });
    if (msg == t.messages.end())
      throw InternalFault("no message for slot " + std::to_string(s));
    const auto key = view.cache_.keys.find(s);
    if (key == view.cache_.keys.end())
      throw InternalFault("user " + std::to_string(k) + " lacks key T_" + std::to_string(s) +
                          " needed at cell (" + std::to_string(j) + "," + std::to_string(k) + ")");
    Symbols acc = xor_symbols(unpack_symbols(params.field, msg->payload, len), key->second);
    for (const Cell other : cells[static_cast<std::size_t>(s)]) {
      if (other.col == k)
        continue;
      const int file = t.demand[static_cast<std::size_t>(other.col - 1)];
      // C3 puts a star at (other.row, k), so this share is cached.
      acc = xor_symbols(acc, cached_share({file, other.row}, {other.row, k}));
    }
    shares.parts[static_cast<std::size_t>(j - 1)] = std::move(acc);
  }
  const auto [w, v] = decode_file(params, view.cauchy_, shares);
  return join_file(params, w);
}

BaselineState baseline_place(const Pda &pda, int N, std::size_t B, std::uint64_t seed,
                             std::optional<std::vector<Bits>> files) {
  const auto report = validate(pda);
  if (!report.valid())
    throw DomainError("not a valid PDA: " + report.violations.front().condition + " " +
                      report.violations.front().detail);
  if (N < 1 || B == 0)
    throw DomainError("baseline needs N >= 1 and B >= 1");
  BaselineState st;
  st.pda = pda;
  st.N = N;
  st.B = B;
  const auto F = static_cast<std::size_t>(pda.rows());
  st.subfile_bits = (B + F - 1) / F;
  if (files) {
    if (files->size() != static_cast<std::size_t>(N))
      throw DomainError("expected " + std::to_string(N) + " files");
    for (const auto &f : *files)
      if (f.size() != B)
        throw DomainError("file size mismatch");
    st.files = std::move(*files);
  } else {
    std::mt19937_64 rng(seed);
    for (int n = 0; n < N; ++n)
      st.files.push_back(random_file(B, rng));
  }
  for (const auto &f : st.files) {
    auto &subs = st.subfiles.emplace_back();
    for (std::size_t j = 0; j < F; ++j)
      subs.push_back(f.slice(j * st.subfile_bits, st.subfile_bits));
  }
  st.caches.resize(static_cast<std::size_t>(pda.cols()));
  for (int k = 0; k < pda.cols(); ++k)
    for (int j = 0; j < pda.rows(); ++j)
      if (pda.at(j, k).is_star())
        for (int n = 0; n < N; ++n)
          st.caches[static_cast<std::size_t>(k)].emplace(
              ShareRef{n + 1, j + 1},
              st.subfiles[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)]);
  return st;
}

Transcript baseline_deliver(const BaselineState &state, const std::vector<int> &demand) {
  check_demand(state.pda, state.N, demand);
  Transcript t;
  t.demand = demand;
  t.payload_bits = state.subfile_bits;
  t.file_bits = state.B;
  const auto cells = cells_by_label(state.pda);
  for (int s = 1; s <= state.pda.s(); ++s) {
    Message m;
    m.slot = s;
    m.payload = Bits(state.subfile_bits);
    for (const Cell c : cells[static_cast<std::size_t>(s)]) {
      const int file = demand[static_cast<std::size_t>(c.col - 1)];
      m.terms.push_back({file, c.row});
      m.payload ^= state.subfiles[static_cast<std::size_t>(file - 1)][static_cast<std::size_t>(c.row - 1)];
    }
    t.messages.push_back(std::move(m));
  }
  return t;
}

Bits baseline_decode(const BaselineState &state, int user, const Transcript &t) {
  const Pda &pda = state.pda;
  const auto &cache = state.caches.at(static_cast<std::size_t>(user - 1));
  const int want = t.demand.at(static_cast<std::size_t>(user - 1));
  const auto cells = cells_by_label(pda);
  auto lookup = [&](ShareRef ref) -> const Bits & {
    const auto it = cache.find(ref);
    if (it == cache.end())
      throw InternalFault("user " + std::to_string(user) + " lacks subfile W^" +
                          std::to_string(ref.file) + "_" + std::to_string(ref.share));
    return it->second;
  };
  Bits out(state.B);
  std::size_t pos = 0;
  for (int j = 1; j <= pda.rows(); ++j) {
    Bits sub;
    const PdaEntry e = pda.at(j - 1, user - 1);
    if (e.is_star()) {
      sub = lookup({want, j});
    } else {
      sub = t.messages.at(static_cast<std::size_t>(e.value() - 1)).payload;
      for (const Cell other : cells[static_cast<std::size_t>(e.value())])
        if (other.col != user)
          sub ^= lookup({t.demand[static_cast<std::size_t>(other.col - 1)], other.row});
    }
    for (std::size_t i = 0; i < sub.size() && pos < state.B; ++i, ++pos)
      out.set(pos, sub.get(i));
  }
  return out;
}

namespace {

RateReport check_rate(const Transcript &t, std::string scheme, int S, Rational nominal,
                      bool padded) {
  RateReport r;
  r.scheme = std::move(scheme);
  r.messages = t.messages.size();
  r.payload_bits = t.payload_bits;
  r.bits_sent = t.bits_sent();
  r.file_bits = t.file_bits;
  r.nominal = nominal;
  r.padded = padded;
  if (r.messages != static_cast<std::size_t>(S))
    throw InternalFault("transcript has " + std::to_string(r.messages) + " messages, expected S=" +
                        std::to_string(S));
  for (const auto &m : t.messages)
    if (m.payload.size() != t.payload_bits)
      throw InternalFault("payload of slot " + std::to_string(m.slot) + " has the wrong size");
  r.measured = Rational(static_cast<std::int64_t>(r.bits_sent), static_cast<std::int64_t>(r.file_bits));
  r.matches_nominal = r.measured == r.nominal;
  if (!padded && !r.matches_nominal)
    throw InternalFault("measured rate " + to_string(r.measured) + " differs from " +
                        to_string(r.nominal));
  return r;
}

} // namespace

RateReport measure(const Transcript &t, const SystemState &state) {
  const auto &sp = state.scheme();
  return check_rate(t, "pda-secret", sp.S, sp.rate_secret, state.params().padded());
}

RateReport measure(const Transcript &t, const BaselineState &state) {
  const int F = state.pda.rows();
  const bool padded = state.subfile_bits * static_cast<std::size_t>(F) != state.B;
  return check_rate(t, "pda-plain", state.pda.s(), Rational(state.pda.s(), F), padded);
}

} // namespace sccpda
