#include "sccpda/analysis.hpp"
#include "sccpda/caching_sim.hpp"
#include "sccpda/errors.hpp"
#include "sccpda/pda.hpp"
#include "sccpda/report.hpp"
#include "sccpda/secrecy_audit.hpp"

#include <CLI11.hpp>

#include <bit>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace sccpda;

namespace {

enum Exit { kOk = 0, kDomain = 1, kIo = 2 };

struct Globals {
  std::uint64_t seed = 0;
  std::string field_poly;
  bool json = false;
  std::string out;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Globals &g, const std::string &text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out, std::ios::binary);
  if (!out || !(out << text))
    throw IoError("cannot write " + g.out);
}

void emit_json(const Globals &g, const json &j) { emit(g, j.dump(2) + "\n"); }

std::optional<Field> field_from_flag(const Globals &g) {
  if (g.field_poly.empty())
    return std::nullopt;
  std::string s = g.field_poly;
  if (s.starts_with("0x") || s.starts_with("0X"))
    s = s.substr(2);
  std::uint32_t poly = 0;
  try {
    std::size_t used = 0;
    poly = static_cast<std::uint32_t>(std::stoul(s, &used, 16));
    if (used != s.size())
      throw std::invalid_argument("trailing");
  } catch (const std::exception &) {
    throw DomainError("--field-poly expects a hex polynomial such as 0xb");
  }
  if (poly < 3)
    throw DomainError("--field-poly must have degree >= 1");
  const unsigned r = static_cast<unsigned>(std::bit_width(poly)) - 1;
  return Field(r, poly);
}

std::vector<int> parse_int_list(const std::string &text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size())
        throw std::invalid_argument("trailing");
    } catch (const std::exception &) {
      throw DomainError("bad integer list '" + text + "'");
    }
  }
  return out;
}

std::string describe(const Pda &p) {
  std::ostringstream ss;
  ss << "(" << p.cols() << "," << p.rows() << "," << p.z() << "," << p.s() << ")";
  return ss.str();
}

int cmd_validate(const Globals &g, const std::string &path) {
  const Pda p = parse_pda(read_file(path));
  const auto rep = validate(p);
  if (g.json) {
    emit_json(g, validation_report(p));
  } else {
    std::ostringstream ss;
    if (rep.valid()) {
      ss << "valid " << describe(p);
      if (auto r = regularity(p))
        ss << ", g=" << *r;
      ss << "\n";
    } else {
      ss << "invalid " << describe(p) << "\n";
      for (const auto &v : rep.violations) {
        ss << "  " << v.condition << ":";
        for (const auto &c : v.cells)
          ss << " (" << c.row << "," << c.col << ")";
        ss << "  " << v.detail << "\n";
      }
    }
    emit(g, ss.str());
  }
  return rep.valid() ? kOk : kDomain;
}

int cmd_mn(const Globals &g, int K, int t) {
  const Pda p = mn_pda(K, t);
  if (g.json) {
    json j = validation_report(p);
    j["pda"] = pda_rows(p);
    emit_json(g, j);
  } else {
    emit(g, serialize_pda(p));
  }
  return kOk;
}

SystemConfig load_config(const Globals &g, const std::string &path, int N, std::size_t B) {
  Pda p = parse_pda(read_file(path));
  const auto rep = validate(p);
  if (!rep.valid())
    throw DomainError(path + " is not a valid PDA (" + rep.violations.front().condition + ": " +
                      rep.violations.front().detail + ")");
  return SystemConfig::make(std::move(p), N, B, g.seed, field_from_flag(g));
}

std::vector<int> demand_or_default(const std::string &text, const Pda &p, int N) {
  std::vector<int> d;
  if (text.empty()) {
    for (int k = 0; k < p.cols(); ++k)
      d.push_back(k % N + 1);
  } else {
    d = parse_int_list(text);
  }
  check_demand(p, N, d);
  return d;
}

int cmd_simulate(const Globals &g, const std::string &path, int N, std::size_t B,
                 const std::string &demand_text, const std::string &inject_path, RunOptions opts) {
  const auto cfg = load_config(g, path, N, B);
  const auto d = demand_or_default(demand_text, cfg.pda, N);
  InjectedRandomness inj;
  if (!inject_path.empty()) {
    json doc;
    try {
      doc = json::parse(read_file(inject_path));
    } catch (const json::parse_error &e) {
      throw IoError(inject_path + ": " + e.what());
    }
    if (opts.plain && (doc.contains("V") || doc.contains("T")))
      throw DomainError("--plain runs have no keys to inject");
    inj = parse_injection(doc, cfg);
  }
  const json rep = simulate_report(cfg, d, inj, opts);
  emit_json(g, rep);
  bool ok = true;
  for (const auto &e : rep["decode"])
    ok = ok && e["ok"].get<bool>();
  if (rep.contains("audit") && rep["audit"].contains("all_leak_free"))
    ok = ok && rep["audit"]["all_leak_free"].get<bool>();
  return ok ? kOk : kDomain;
}

ShareRef parse_share(const std::string &text) {
  const auto v = parse_int_list(text);
  if (v.size() != 2)
    throw DomainError("share must be given as n,j");
  return ShareRef{v[0], v[1]};
}

int cmd_audit(const Globals &g, const std::string &path, int N, const std::string &demand_text,
              Ablation ab, const std::vector<std::string> &shares) {
  const auto cfg = load_config(g, path, N, 1);
  for (const auto &s : shares)
    ab.granted_shares.push_back(parse_share(s));
  std::vector<std::vector<int>> demands;
  if (demand_text.empty())
    demands = demand_set(N, cfg.pda.cols(), g.seed);
  else
    demands.push_back(demand_or_default(demand_text, cfg.pda, N));
  const json rep = audit_report(cfg, demands, ab);
  if (g.json) {
    emit_json(g, rep);
  } else {
    std::ostringstream ss;
    ss << "field GF(2^" << cfg.field.degree() << ") poly " << rep["field"]["poly"].get<std::string>()
       << ", " << demands.size() << " demand(s), ablation: " << ab.describe() << "\n";
    if (rep["all_leak_free"].get<bool>()) {
      ss << "leak_free for every user and the eavesdropper\n";
    } else {
      ss << rep["leaking"].get<std::size_t>() << " leaking (observer, demand) pairs\n";
      for (const auto &r : rep["reports"]) {
        if (r["leak_free"].get<bool>())
          continue;
        ss << "  " << r["observer"].get<std::string>() << " d=" << r["demand"].dump()
           << " leaks " << r["leaked_bits_per_position"].get<std::size_t>() << " bit(s)/position";
        if (r.contains("witness")) {
          ss << ", exposes";
          for (const auto &t : r["witness"]["exposes"])
            ss << " " << t["coef"].get<unsigned>() << "*" << t["term"].get<std::string>();
        }
        ss << "\n";
      }
    }
    emit(g, ss.str());
  }
  return rep["all_leak_free"].get<bool>() ? kOk : kDomain;
}

int cmd_table1(const Globals &g, const std::vector<int> &qs, const std::vector<int> &ns, int N) {
  json rows = json::array();
  std::ostringstream ss;
  auto add = [&](int row, int param) {
    const auto r = table1_row(row, param, N);
    rows.push_back(to_json(r));
    ss << "row " << r.row << " " << r.pda_label << " " << r.parameter << ": K=" << r.K
       << " M=" << to_string(r.M) << " t=" << to_string(r.t)
       << " R_mn=" << (r.R_mn ? to_string(*r.R_mn) : "-") << " R_pda=" << to_string(r.R_pda)
       << " F_mn=" << (r.F_mn ? std::to_string(*r.F_mn) : "-") << " F_pda=" << r.F_pda << "\n";
    if (!r.integer_t)
      ss << "  flagged: t is not an integer in [0, K-2]\n";
    for (const auto &d : r.discrepancies())
      ss << "  discrepancy: " << d << "\n";
  };
  for (int q : qs) {
    add(1, q);
    add(2, q);
    add(4, q);
  }
  for (int n : ns)
    add(3, n);
  if (g.json)
    emit_json(g, {{"schema", kTable1Schema}, {"N", N}, {"rows", rows}});
  else
    emit(g, ss.str());
  return kOk;
}

int cmd_table2(const Globals &g, int q, int m, int N) {
  const auto r = table2(q, m, N);
  if (g.json) {
    emit_json(g, {{"schema", kTable2Schema}, {"rows", json::array({to_json(r)})}});
  } else {
    std::ostringstream ss;
    ss << "q=" << q << " m=" << m << " N=" << N << " K=" << r.K << "\n"
       << "              without secrecy  with secrecy\n"
       << "  memory      " << to_string(r.plain.M) << "  " << to_string(r.secret.M) << "\n"
       << "  subpkt      " << r.plain.subpkt << "  " << r.secret.subpkt << "\n"
       << "  rate        " << to_string(r.plain.R) << "  " << to_string(r.secret.R) << "\n"
       << "  subpkt gap  " << r.subpkt_gap << " (Z=" << r.Z << ")"
       << (r.consistent() ? "" : "  INCONSISTENT with closed forms") << "\n";
    emit(g, ss.str());
  }
  return r.consistent() ? kOk : kDomain;
}

Rational parse_rational(const std::string &text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos)
      return Rational(std::stoll(text));
    return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
  } catch (const std::exception &) {
    throw DomainError("bad rational '" + text + "'");
  }
}

int cmd_envelope(const Globals &g, int K, int N, const std::vector<std::string> &extra,
                 const std::vector<std::string> &at) {
  std::vector<RatePoint> pts;
  if (K > 0)
    pts = mn_rate_points(K, N);
  for (const auto &e : extra) {
    const auto colon = e.find(':');
    if (colon == std::string::npos)
      throw DomainError("--point expects M:R");
    pts.push_back(RatePoint{parse_rational(e.substr(0, colon)), parse_rational(e.substr(colon + 1)),
                            "user", 0, std::nullopt});
  }
  const auto env = Envelope::lower_convex(pts);
  json verts = json::array(), evals = json::array();
  std::ostringstream ss;
  ss << "vertices:\n";
  for (const auto &v : env.vertices()) {
    verts.push_back(to_json(v));
    ss << "  M=" << to_string(v.M) << " R=" << to_string(v.R) << " (" << v.scheme << ")\n";
  }
  for (const auto &a : at) {
    const auto M = parse_rational(a);
    const auto R = env.eval(M);
    evals.push_back({{"M", to_json(M)}, {"R", to_json(R)}});
    ss << "R(" << to_string(M) << ") = " << to_string(R) << " = " << to_decimal(R) << "\n";
  }
  if (g.json)
    emit_json(g, {{"schema", kEnvelopeSchema}, {"vertices", verts}, {"evaluations", evals}});
  else
    emit(g, ss.str());
  return kOk;
}

int cmd_rate_point(const Globals &g, int K, int N, std::optional<int> t, bool endpoint) {
  if (endpoint == t.has_value())
    throw DomainError("give exactly one of --t and --endpoint");
  const auto p = endpoint ? mn_endpoint(K, N) : mn_rate_point(K, N, *t);
  if (g.json) {
    json j = to_json(p);
    j["schema"] = kRatePointSchema;
    j["K"] = K;
    j["N"] = N;
    emit_json(g, j);
  } else {
    emit(g, "M=" + to_string(p.M) + " R=" + to_string(p.R) + " (" + to_decimal(p.R) +
                ") subpkt=" + std::to_string(p.subpkt) + "\n");
  }
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Secretive coded caching from placement delivery arrays"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Generator seed")->default_val(0);
  app.add_option("--field-poly", g.field_poly, "GF(2^r) modulus as hex, e.g. 0xb");
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--out", g.out, "Write output to this file");

  std::string path, demand, inject;
  int K = 0, N = 0, t = 0, q = 0, m = 0;
  std::size_t B = 0;
  std::vector<int> qs, ns;
  std::vector<std::string> points, at, shares;
  bool plain = false, secret = false, audit = false, frames = false, endpoint = false;
  std::optional<int> t_opt;
  Ablation ab;

  auto *validate_cmd = app.add_subcommand("validate", "Check a PDA file against C1-C3");
  validate_cmd->add_option("pda", path)->required();

  auto *mn_cmd = app.add_subcommand("mn", "Generate the MN PDA for (K, t)");
  mn_cmd->add_option("K", K)->required();
  mn_cmd->add_option("t", t)->required();

  auto *sim = app.add_subcommand("simulate", "Run placement, delivery and decoding");
  sim->add_option("pda", path)->required();
  sim->add_option("-N,--N", N, "Number of files")->required();
  sim->add_option("-B,--B", B, "File size in bits")->required();
  sim->add_option("--demand", demand, "Comma-separated d_1..d_K");
  sim->add_flag("--secret", secret, "Secretive scheme (default)");
  sim->add_flag("--plain", plain, "Non-secretive baseline");
  sim->add_flag("--audit", audit, "Attach rank certificates for this demand");
  sim->add_flag("--dump-frames", frames, "Include the framed transcript as hex");
  sim->add_option("--inject-randomness", inject, "JSON file with files, V and T values");

  auto *aud = app.add_subcommand("audit", "Certify zero leakage by rank");
  aud->add_option("pda", path)->required();
  aud->add_option("-N,--N", N, "Number of files")->required();
  aud->add_option("--demand", demand, "Single demand; default is the full or sampled set");
  aud->add_option("--unkey-slot", ab.unkeyed_slots, "Send X_s without T_s");
  aud->add_option("--grant-key", ab.granted_keys, "Observer also holds T_s");
  aud->add_option("--expose-keyvec", ab.exposed_keyvecs, "Observer also holds V^n");
  aud->add_option("--grant-share", shares, "Observer also holds S^n_j, given as n,j");

  auto *t1 = app.add_subcommand("table1", "PDA versus MN comparison rows");
  t1->add_option("--q", qs, "q values for rows 1, 2 and 4");
  t1->add_option("--n", ns, "n values for row 3");
  t1->add_option("-N,--N", N, "Number of files")->required();

  auto *t2 = app.add_subcommand("table2", "Cost of secrecy for the (m+1)-regular family");
  t2->add_option("--q", q)->required();
  t2->add_option("--m", m)->required();
  t2->add_option("-N,--N", N)->required();

  auto *env = app.add_subcommand("envelope", "Lower convex envelope of rate points");
  env->add_option("-K,--K", K, "Include every MN point for K users");
  env->add_option("-N,--N", N, "Number of files")->default_val(1);
  env->add_option("--point", points, "Extra point M:R (rationals)");
  env->add_option("--at", at, "Evaluate the envelope at M");

  auto *rp = app.add_subcommand("rate-point", "MN secretive rate at a memory point");
  rp->add_option("-K,--K", K)->required();
  rp->add_option("-N,--N", N)->required();
  rp->add_option("--t", t_opt);
  rp->add_flag("--endpoint", endpoint, "M = N(K-1), R = 1");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kIo;
  }

  try {
    if (*validate_cmd)
      return cmd_validate(g, path);
    if (*mn_cmd)
      return cmd_mn(g, K, t);
    if (*sim) {
      if (plain && secret)
        throw DomainError("--plain and --secret are exclusive");
      return cmd_simulate(g, path, N, B, demand, inject, RunOptions{plain, audit, frames});
    }
    if (*aud)
      return cmd_audit(g, path, N, demand, ab, shares);
    if (*t1) {
      if (qs.empty() && ns.empty())
        throw DomainError("give at least one --q or --n");
      return cmd_table1(g, qs, ns, N);
    }
    if (*t2)
      return cmd_table2(g, q, m, N);
    if (*env)
      return cmd_envelope(g, K, N, points, at);
    if (*rp)
      return cmd_rate_point(g, K, N, t_opt, endpoint);
  } catch (const IoError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const DomainError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const InternalFault &e) {
    std::cerr << "internal fault: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}
