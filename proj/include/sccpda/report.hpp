#pragma once

#include "sccpda/analysis.hpp"
#include "sccpda/caching_sim.hpp"
#include "sccpda/pda.hpp"
#include "sccpda/secrecy_audit.hpp"

#include <json.hpp>

#include <vector>

namespace sccpda {

using nlohmann::json;

// Version tags carried in the "schema" member of every top-level report.
inline constexpr const char *kValidationSchema = "sccpda.validation/1";
inline constexpr const char *kRunSchema = "sccpda.run/1";
inline constexpr const char *kAuditSchema = "sccpda.audit/1";
inline constexpr const char *kTable1Schema = "sccpda.table1/1";
inline constexpr const char *kTable2Schema = "sccpda.table2/1";
inline constexpr const char *kEnvelopeSchema = "sccpda.envelope/1";
inline constexpr const char *kRatePointSchema = "sccpda.rate_point/1";

json to_json(const Rational &x);       // {"exact": "3/2", "decimal": "1.5000"}
json to_json(const Field &f);          // {"r": 3, "poly": "0xb"}
json to_json(const ValidationReport &r);
json to_json(const SchemeParams &p);
json to_json(const CauchyMatrix &g);
json to_json(const LeakageReport &r);
json to_json(const RatePoint &p);
json to_json(const ComparisonRow &r);
json to_json(const Table2Row &r);
json to_json(const ThresholdReport &r);
json pda_rows(const Pda &p); // ["* 2 * 3 * 1", ...]

json validation_report(const Pda &p);

struct RunOptions {
  bool plain = false; // non-secretive baseline instead of the secretive scheme
  bool audit = false; // attach rank certificates for this demand
  bool dump_frames = false;
};

// Runs placement, delivery and every user's decoding, and reports the
// cache manifests, the transcript, per-user decode status and the rate.
json simulate_report(const SystemConfig &cfg, const std::vector<int> &demand,
                     const InjectedRandomness &inject = {}, const RunOptions &opts = {});

// Rank certificates for every user and the eavesdropper over `demands`.
json audit_report(const SystemConfig &cfg, const std::vector<std::vector<int>> &demands,
                  const Ablation &ablation = {});

// Injected randomness document:
//   {"files": ["hex", ...], "V": [[seq, ...], ...], "T": [seq, ...]}
// where seq is a hex symbol ("6") or a list of hex symbols (["6","1"]).
// Every member is optional. Throws IoError on malformed input.
InjectedRandomness parse_injection(const json &doc, const SystemConfig &cfg);

} // namespace sccpda
