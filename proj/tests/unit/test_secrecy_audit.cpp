#include "sccpda/errors.hpp"
#include "sccpda/secrecy_audit.hpp"

#include <doctest.h>

using namespace sccpda;

namespace {

const char *kRefPda = "* 2 * 3 * 1\n"
                        "1 * * 4 2 *\n"
                        "* 4 1 * 3 *\n"
                        "3 * 2 * * 4\n";

CauchyMatrix gf8_g() { return cauchy_build(Field(3, 0xb), 4, 4); }

} // namespace

TEST_CASE("intact reference system is leak free for every observer") {
  const auto pda = parse_pda(kRefPda);
  const std::vector<std::vector<int>> demands = {{1, 2, 3, 4, 5, 6}, {1, 1, 1, 1, 1, 1}, {2, 1, 2, 1, 3, 3}};
  const auto res = audit_system(pda, 6, gf8_g(), demands);
  CHECK(res.reports.size() == 3 * 7);
  CHECK(res.all_leak_free());
  CHECK(res.reports.back().observer.is_eavesdropper());
}

TEST_CASE("observation system shape for user 1") {
  const auto pda = parse_pda(kRefPda);
  const auto obs = build_observation(pda, 6, gf8_g(), Observer::of_user(1), {1, 2, 3, 4, 5, 6});
  // 12 cached shares + 2 keys + 4 messages.
  CHECK(obs.observations.size() == 18);
  // Protected: W of files 2..6.
  CHECK(obs.protected_unknowns.size() == 10);
  CHECK(obs.A.rows() == obs.Bmat.rows());
}

TEST_CASE("unkeying slot 2 leaks to user 1 with a witness") {
  const auto pda = parse_pda(kRefPda);
  Ablation ab;
  ab.unkeyed_slots = {2};
  const auto obs = build_observation(pda, 6, gf8_g(), Observer::of_user(1), {1, 2, 3, 4, 5, 6}, ab);
  const auto rep = certify_zero_leakage(obs);
  CHECK_FALSE(rep.leak_free);
  CHECK(rep.leaked_bits > 0);
  REQUIRE(rep.witness.has_value());
  CHECK_FALSE(rep.witness->exposes.empty());
  for (const auto &[c, label] : rep.witness->exposes)
    CHECK(label.starts_with("W^"));
}

TEST_CASE("granting a key or a third share leaks") {
  const auto pda = parse_pda(kRefPda);
  Ablation keys;
  keys.granted_keys = {2};
  CHECK_FALSE(certify_zero_leakage(
                  build_observation(pda, 6, gf8_g(), Observer::of_user(1), {1, 2, 3, 4, 5, 6}, keys))
                  .leak_free);
  Ablation share;
  share.granted_shares = {{2, 2}};
  CHECK_FALSE(certify_zero_leakage(
                  build_observation(pda, 6, gf8_g(), Observer::of_user(1), {1, 2, 3, 4, 5, 6}, share))
                  .leak_free);
  Ablation v;
  v.exposed_keyvecs = {2};
  CHECK_FALSE(certify_zero_leakage(
                  build_observation(pda, 6, gf8_g(), Observer::of_user(1), {1, 2, 3, 4, 5, 6}, v))
                  .leak_free);
}

TEST_CASE("Z shares of one file reveal nothing, Z+1 reveal something") {
  const auto g = gf8_g();
  CHECK(certify_zero_leakage(share_subset_observation(g, 2, {1, 3})).leak_free);
  CHECK(certify_zero_leakage(share_subset_observation(g, 2, {2, 4})).leak_free);
  const auto three = certify_zero_leakage(share_subset_observation(g, 2, {1, 2, 3}));
  CHECK_FALSE(three.leak_free);
  CHECK(three.leaked_bits == 3); // one GF(8) symbol per position
}

TEST_CASE("demand sets") {
  CHECK(demand_set(2, 3).size() == 8);
  const auto big = demand_set(6, 6, 1);
  CHECK(big.size() <= 256 + 6);
  CHECK(big.size() >= 6);
  for (const auto &d : big)
    CHECK(d.size() == 6);
}

TEST_CASE("exhaustive oracle on the smallest MN system") {
  const auto cfg = SystemConfig::make(mn_pda(2, 1), 2, 2, 0, Field(2));
  CHECK(enumeration_bits(cfg) <= 24);
  for (int u = 0; u <= 2; ++u) {
    const auto mi = brute_force_mi(cfg, Observer{u}, {1, 2});
    CHECK(mi.exact_zero);
    CHECK(mi.bits == doctest::Approx(0.0));
  }
  Ablation ab;
  ab.exposed_keyvecs = {2};
  const auto leak = brute_force_mi(cfg, Observer::of_user(1), {1, 2}, ab);
  CHECK_FALSE(leak.exact_zero);
  CHECK(leak.bits > 0.5);
  CHECK_THROWS_AS(brute_force_mi(SystemConfig::make(mn_pda(3, 1), 3, 8, 0), Observer{0}, {1, 2, 3}),
                  DomainError);
}
