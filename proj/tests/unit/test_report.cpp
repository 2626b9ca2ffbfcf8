#include "sccpda/errors.hpp"
#include "sccpda/report.hpp"

#include <doctest.h>

using namespace sccpda;

namespace {

const char *kRefPda = "* 2 * 3 * 1\n"
                        "1 * * 4 2 *\n"
                        "* 4 1 * 3 *\n"
                        "3 * 2 * * 4\n";

} // namespace

TEST_CASE("rationals carry exact and decimal forms") {
  const auto j = to_json(Rational(3, 2));
  CHECK(j["exact"] == "3/2");
  CHECK(j["decimal"] == "1.5000");
}

TEST_CASE("validation report") {
  const auto j = validation_report(parse_pda(kRefPda));
  CHECK(j["schema"] == kValidationSchema);
  CHECK(j["valid"] == true);
  CHECK(j["g"] == 3);
  const auto bad = validation_report(parse_pda("1 2\n* 1\n2 *\n"));
  CHECK(bad["valid"] == false);
  CHECK_FALSE(bad["violations"].empty());
}

TEST_CASE("run report is deterministic and complete") {
  const auto cfg = SystemConfig::make(parse_pda(kRefPda), 6, 12, 9);
  const std::vector<int> d{1, 2, 3, 4, 5, 6};
  const auto a = simulate_report(cfg, d, {}, RunOptions{false, true, true});
  const auto b = simulate_report(cfg, d, {}, RunOptions{false, true, true});
  CHECK(a.dump() == b.dump());
  CHECK(a["schema"] == kRunSchema);
  CHECK(a["audit"]["all_leak_free"] == true);
  CHECK(a["rate"]["measured"]["exact"] == "2");
  CHECK(a["cache_manifests"].size() == 6);
  CHECK(a["transcript"]["messages"].size() == 4);
  CHECK(a["transcript"].contains("frames_hex"));
  for (const auto &e : a["decode"])
    CHECK(e["ok"] == true);
}

TEST_CASE("injected files are refused for certification") {
  const auto cfg = SystemConfig::make(parse_pda(kRefPda), 6, 6, 0, Field(3, 0xb));
  const auto inj = parse_injection(json::parse(R"({"files": ["04","a8","5c","f0","38","cc"]})"), cfg);
  const auto r = simulate_report(cfg, {1, 2, 3, 4, 5, 6}, inj, RunOptions{false, true, false});
  CHECK(r["audit"].contains("refused"));
}

TEST_CASE("injection parsing errors") {
  const auto cfg = SystemConfig::make(parse_pda(kRefPda), 6, 6, 0, Field(3, 0xb));
  CHECK_THROWS_AS(parse_injection(json::parse(R"({"T": ["9","1","1","1"]})"), cfg), IoError);
  CHECK_THROWS_AS(parse_injection(json::parse(R"({"T": ["q"]})"), cfg), IoError);
  CHECK_THROWS_AS(parse_injection(json::parse(R"({"V": [["1", ["2", "3"]]]})"), cfg), IoError);
  CHECK_THROWS_AS(parse_injection(json::parse("[]"), cfg), IoError);
  const auto ok = parse_injection(json::parse(R"({"T": ["1", ["2"], "0x3", "4"]})"), cfg);
  REQUIRE(ok.unique_keys.has_value());
  CHECK(ok.unique_keys->at(2) == Symbols{Element{3}});
}

TEST_CASE("audit report with an ablation") {
  const auto cfg = SystemConfig::make(parse_pda(kRefPda), 6, 1, 0, Field(3, 0xb));
  Ablation ab;
  ab.unkeyed_slots = {1};
  const auto j = audit_report(cfg, {{1, 2, 3, 4, 5, 6}}, ab);
  CHECK(j["schema"] == kAuditSchema);
  CHECK(j["all_leak_free"] == false);
  CHECK(j["ablation"] == "X_1 sent without T_1");
}

TEST_CASE("table emitters are pure") {
  CHECK(to_json(table1_row(1, 3, 6)).dump() == to_json(table1_row(1, 3, 6)).dump());
  CHECK(to_json(table2(2, 2, 6))["consistent"] == true);
}
