#include "sccpda/report.hpp"

#include "sccpda/errors.hpp"

#include <cstdio>

namespace sccpda {

namespace {

std::string hex32(std::uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%x", v);
  return buf;
}

json cell_list(const std::vector<Cell> &cells) {
  json out = json::array();
  for (const auto &c : cells)
    out.push_back({c.row, c.col});
  return out;
}

json terms_json(const std::vector<std::pair<Element, std::string>> &terms) {
  json out = json::array();
  for (const auto &[coef, label] : terms)
    out.push_back({{"coef", coef.value()}, {"term", label}});
  return out;
}

json demand_json(const std::vector<int> &d) { return json(d); }

std::uint32_t parse_hex_symbol(const json &v, const Field &field) {
  if (!v.is_string())
    throw IoError("symbols must be hex strings");
  std::string s = v.get<std::string>();
  if (s.starts_with("0x") || s.starts_with("0X"))
    s = s.substr(2);
  if (s.empty() || s.size() > 8 || s.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos)
    throw IoError("bad hex symbol '" + v.get<std::string>() + "'");
  const auto value = static_cast<std::uint32_t>(std::stoul(s, nullptr, 16));
  if (value >= field.order())
    throw IoError("symbol " + v.get<std::string>() + " is not an element of GF(2^" +
                  std::to_string(field.degree()) + ")");
  return value;
}

Symbols parse_sequence(const json &v, const Field &field, std::size_t len, const std::string &what) {
  Symbols out;
  if (v.is_array()) {
    for (const auto &x : v)
      out.push_back(Element{parse_hex_symbol(x, field)});
  } else {
    out.push_back(Element{parse_hex_symbol(v, field)});
  }
  if (out.size() != len)
    throw IoError(what + " has " + std::to_string(out.size()) + " symbols, expected " +
                  std::to_string(len));
  return out;
}

std::string share_name(const ShareRef &r, const char *letter) {
  return std::string(letter) + "^" + std::to_string(r.file) + "_" + std::to_string(r.share);
}

} // namespace

json to_json(const Rational &x) { return {{"exact", to_string(x)}, {"decimal", to_decimal(x)}}; }

json to_json(const Field &f) { return {{"r", f.degree()}, {"poly", hex32(f.poly())}}; }

json to_json(const ValidationReport &r) {
  json v = json::array();
  for (const auto &viol : r.violations)
    v.push_back({{"condition", viol.condition}, {"cells", cell_list(viol.cells)}, {"detail", viol.detail}});
  return {{"valid", r.valid()}, {"violations", v}};
}

json to_json(const SchemeParams &p) {
  json j = {{"K", p.K},
            {"F", p.F},
            {"Z", p.Z},
            {"S", p.S},
            {"N", p.N},
            {"M", to_json(p.M)},
            {"rate_secret", to_json(p.rate_secret)},
            {"M_plain", to_json(p.M_plain)},
            {"rate_plain", to_json(p.rate_plain)},
            {"subpkt_secret", p.subpkt_secret},
            {"subpkt_plain", p.subpkt_plain}};
  j["g"] = p.g ? json(*p.g) : json(nullptr);
  return j;
}

json to_json(const CauchyMatrix &g) {
  json x = json::array(), y = json::array();
  for (auto e : g.x)
    x.push_back(e.value());
  for (auto e : g.y)
    y.push_back(e.value());
  return {{"field", to_json(g.field)}, {"X", x}, {"Y", y}, {"entries", g.entries.values()}};
}

json to_json(const LeakageReport &r) {
  json j = {{"observer", r.observer.label()},
            {"demand", demand_json(r.demand)},
            {"leak_free", r.leak_free},
            {"method", r.method},
            {"rank_cover", r.rank_cover},
            {"rank_total", r.rank_total},
            {"leaked_bits_per_position", r.leaked_bits}};
  if (r.witness)
    j["witness"] = {{"combination", terms_json(r.witness->combination)},
                    {"exposes", terms_json(r.witness->exposes)}};
  return j;
}

json to_json(const RatePoint &p) {
  json j = {{"M", to_json(p.M)}, {"R", to_json(p.R)}, {"scheme", p.scheme}, {"subpkt", p.subpkt}};
  j["t"] = p.t ? json(*p.t) : json(nullptr);
  return j;
}

json to_json(const ComparisonRow &r) {
  json checks = json::array();
  for (const auto &c : r.checks) {
    json cj = {{"name", c.name}};
    cj["formula"] = c.formula ? to_json(*c.formula) : json(nullptr);
    cj["printed"] = c.printed ? to_json(*c.printed) : json(nullptr);
    cj["status"] = !c.compared() ? "not compared" : (c.matches() ? "match" : "discrepancy");
    if (!c.note.empty())
      cj["note"] = c.note;
    checks.push_back(cj);
  }
  json j = {{"row", r.row},
            {"pda", r.pda_label},
            {"parameter", r.parameter},
            {"K", r.K},
            {"F", r.F},
            {"Z", r.Z},
            {"S", r.S},
            {"N", r.N},
            {"M", to_json(r.M)},
            {"t", to_json(r.t)},
            {"integer_t", r.integer_t},
            {"R_pda", to_json(r.R_pda)},
            {"F_pda", r.F_pda},
            {"checks", checks},
            {"discrepancies", r.discrepancies()}};
  j["R_mn"] = r.R_mn ? to_json(*r.R_mn) : json(nullptr);
  j["F_mn"] = r.F_mn ? json(*r.F_mn) : json(nullptr);
  return j;
}

json to_json(const Table2Row &r) {
  auto col = [](const Table2Column &c) {
    return json{{"M", to_json(c.M)}, {"subpkt", c.subpkt}, {"R", to_json(c.R)}};
  };
  return {{"q", r.q},
          {"m", r.m},
          {"N", r.N},
          {"K", r.K},
          {"pda", {{"F", r.F}, {"Z", r.Z}, {"S", r.S}, {"g", r.m + 1}}},
          {"without_secrecy", col(r.plain)},
          {"with_secrecy", col(r.secret)},
          {"closed_form", {{"without_secrecy", col(r.plain_closed)}, {"with_secrecy", col(r.secret_closed)}}},
          {"subpkt_gap", r.subpkt_gap},
          {"consistent", r.consistent()}};
}

json to_json(const ThresholdReport &r) {
  return {{"F", r.F},
          {"Z", r.Z},
          {"full_rank", r.full_rank},
          {"exhaustive", r.exhaustive},
          {"subsets_checked", r.subsets_checked},
          {"failing_subsets", r.failing_subsets},
          {"submatrices_checked", r.submatrices_checked},
          {"failing_submatrices", r.failing_submatrices},
          {"passed", r.passed()}};
}

json pda_rows(const Pda &p) {
  json rows = json::array();
  std::string text = serialize_pda(p);
  std::size_t start = 0;
  while (start < text.size()) {
    const auto end = text.find('\n', start);
    rows.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return rows;
}

json validation_report(const Pda &p) {
  const auto rep = validate(p);
  json j = to_json(rep);
  j["schema"] = kValidationSchema;
  j["K"] = p.cols();
  j["F"] = p.rows();
  j["Z"] = p.z();
  j["S"] = p.s();
  const auto g = rep.valid() ? regularity(p) : std::nullopt;
  j["g"] = g ? json(*g) : json(nullptr);
  if (!p.relabeling().empty()) {
    json m = json::object();
    for (const auto &[from, to] : p.relabeling())
      m[std::to_string(from)] = to;
    j["relabeling"] = m;
  }
  return j;
}

json simulate_report(const SystemConfig &cfg, const std::vector<int> &demand,
                     const InjectedRandomness &inject, const RunOptions &opts) {
  json rep;
  rep["schema"] = kRunSchema;
  rep["mode"] = opts.plain ? "plain" : "secret";
  rep["pda"] = pda_rows(cfg.pda);
  const auto scheme = derive_params(cfg.pda, cfg.N);
  rep["config"] = {{"K", scheme.K}, {"F", scheme.F}, {"Z", scheme.Z}, {"S", scheme.S},
                   {"N", cfg.N},    {"B", cfg.B},    {"seed", cfg.seed}};
  rep["params"] = to_json(scheme);
  json notes = json::array();
  if (cfg.N < cfg.pda.cols())
    notes.push_back("N < K: outside the N >= K regime the scheme is stated for; delivery is still "
                    "executed as specified");

  json decode = json::array();
  Transcript t;
  RateReport rate;
  if (opts.plain) {
    const auto st = baseline_place(cfg.pda, cfg.N, cfg.B, cfg.seed, inject.files);
    t = baseline_deliver(st, demand);
    rate = measure(t, st);
    json manifests = json::array();
    for (std::size_t k = 0; k < st.caches.size(); ++k) {
      json subs = json::array();
      for (const auto &[ref, bits] : st.caches[k])
        subs.push_back({ref.file, ref.share});
      manifests.push_back({{"user", k + 1}, {"subfiles", subs},
                           {"bits", st.caches[k].size() * st.subfile_bits}});
    }
    rep["cache_manifests"] = manifests;
    for (int k = 1; k <= cfg.pda.cols(); ++k) {
      const int want = demand[static_cast<std::size_t>(k - 1)];
      const bool ok = baseline_decode(st, k, t) == st.files[static_cast<std::size_t>(want - 1)];
      decode.push_back({{"user", k}, {"file", want}, {"ok", ok}});
    }
    if (st.subfile_bits * static_cast<std::size_t>(cfg.pda.rows()) != cfg.B)
      notes.push_back("B is not a multiple of F: subfiles zero-padded to " +
                      std::to_string(st.subfile_bits) + " bits");
  } else {
    const SystemState st = setup(cfg, inject);
    t = deliver(st, demand);
    rate = measure(t, st);
    rep["field"] = to_json(cfg.field);
    rep["cauchy"] = to_json(st.cauchy());
    json manifests = json::array();
    for (const auto &c : st.caches()) {
      json shares = json::array(), keys = json::array();
      for (const auto &[ref, sym] : c.shares)
        shares.push_back({ref.file, ref.share});
      for (const auto &[slot, sym] : c.keys)
        keys.push_back(slot);
      manifests.push_back({{"user", c.user}, {"shares", shares}, {"keys", keys},
                           {"bits", c.bits(st.params())}});
    }
    rep["cache_manifests"] = manifests;
    rep["memory"] = {{"M", to_json(scheme.M)},
                     {"cache_bits", st.caches().front().bits(st.params())},
                     {"share_bits", st.params().share_bits()}};
    for (int k = 1; k <= cfg.pda.cols(); ++k) {
      const int want = demand[static_cast<std::size_t>(k - 1)];
      json entry = {{"user", k}, {"file", want}};
      try {
        entry["ok"] = user_decode(st.view_of(k, t)) == st.files()[static_cast<std::size_t>(want - 1)];
      } catch (const InternalFault &e) {
        entry["ok"] = false;
        entry["error"] = e.what();
      }
      decode.push_back(entry);
    }
    if (st.params().padded())
      notes.push_back("padding: subfiles of " + std::to_string(st.params().subfile_bits) +
                      " bits carried in " + std::to_string(st.params().share_bits()) +
                      "-bit shares; measured rate exceeds S/(F-Z)");
    if (opts.audit) {
      if (inject.files) {
        rep["audit"] = {{"refused", "secrecy certification requires uniformly drawn files; "
                                    "externally supplied files are not certified"}};
      } else {
        json reports = json::array();
        bool all = true;
        for (int k = 0; k <= cfg.pda.cols(); ++k) {
          const Observer o = k == 0 ? Observer::eavesdropper() : Observer::of_user(k);
          const auto lr = certify_zero_leakage(build_observation(cfg.pda, cfg.N, st.cauchy(), o, demand));
          all = all && lr.leak_free;
          reports.push_back(to_json(lr));
        }
        rep["audit"] = {{"all_leak_free", all}, {"reports", reports}};
      }
    }
  }

  json messages = json::array();
  for (const auto &m : t.messages) {
    json terms = json::array();
    for (const auto &ref : m.terms)
      terms.push_back(share_name(ref, opts.plain ? "W" : "S"));
    json mj = {{"slot", m.slot}, {"terms", terms}, {"payload", m.payload.to_hex()}};
    mj["key"] = m.key ? json("T_" + std::to_string(*m.key)) : json(nullptr);
    if (!opts.plain) {
      json syms = json::array();
      for (auto e : unpack_symbols(cfg.field, m.payload, m.payload.size() / cfg.field.degree()))
        syms.push_back(e.value());
      mj["symbols"] = syms;
    }
    messages.push_back(mj);
  }
  rep["transcript"] = {{"demand", demand_json(demand)},
                       {"payload_bits", t.payload_bits},
                       {"bits_sent", t.bits_sent()},
                       {"messages", messages}};
  if (opts.dump_frames) {
    Bits frames(t.frames().size() * 8);
    std::size_t pos = 0;
    for (auto byte : t.frames()) {
      frames.write_uint(pos, 8, byte);
      pos += 8;
    }
    rep["transcript"]["frames_hex"] = frames.to_hex();
  }
  rep["decode"] = decode;
  rep["rate"] = {{"measured", to_json(rate.measured)},
                 {"nominal", to_json(rate.nominal)},
                 {"bits_sent", rate.bits_sent},
                 {"payload_bits", rate.payload_bits},
                 {"messages", rate.messages},
                 {"padded", rate.padded},
                 {"matches_nominal", rate.matches_nominal},
                 {"subpkt", opts.plain ? scheme.subpkt_plain : scheme.subpkt_secret}};
  rep["notes"] = notes;
  return rep;
}

json audit_report(const SystemConfig &cfg, const std::vector<std::vector<int>> &demands,
                  const Ablation &ablation) {
  const auto g = cauchy_build(cfg.field, static_cast<std::size_t>(cfg.pda.rows()),
                              static_cast<std::size_t>(cfg.pda.rows()), cfg.cauchy_x, cfg.cauchy_y);
  const auto res = audit_system(cfg.pda, cfg.N, g, demands, ablation);
  json reports = json::array();
  for (const auto &r : res.reports)
    reports.push_back(to_json(r));
  return {{"schema", kAuditSchema},
          {"field", to_json(cfg.field)},
          {"ablation", ablation.describe()},
          {"demands", demands.size()},
          {"all_leak_free", res.all_leak_free()},
          {"leaking", res.leaking()},
          {"reports", reports}};
}

InjectedRandomness parse_injection(const json &doc, const SystemConfig &cfg) {
  if (!doc.is_object())
    throw IoError("injected randomness must be a JSON object");
  const auto params = SharingParams::make(cfg.pda.rows(), cfg.pda.z(), cfg.field, cfg.B);
  const std::size_t len = params.symbols_per_subfile;
  InjectedRandomness inj;
  if (doc.contains("files")) {
    inj.files.emplace();
    for (const auto &f : doc.at("files")) {
      if (!f.is_string())
        throw IoError("files must be hex strings");
      inj.files->push_back(Bits::from_hex(f.get<std::string>(), cfg.B));
    }
  }
  if (doc.contains("V")) {
    inj.keys.emplace();
    int n = 0;
    for (const auto &kv : doc.at("V")) {
      ++n;
      if (!kv.is_array())
        throw IoError("V entries must be arrays of key sequences");
      KeyVector v;
      int i = 0;
      for (const auto &seq : kv)
        v.parts.push_back(parse_sequence(seq, cfg.field, len,
                                         "V^" + std::to_string(n) + "_" + std::to_string(++i)));
      inj.keys->push_back(std::move(v));
    }
  }
  if (doc.contains("T")) {
    inj.unique_keys.emplace();
    int s = 0;
    for (const auto &seq : doc.at("T"))
      inj.unique_keys->push_back(parse_sequence(seq, cfg.field, len, "T_" + std::to_string(++s)));
  }
  return inj;
}

} // namespace sccpda
