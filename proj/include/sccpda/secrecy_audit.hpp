#pragma once

#include "sccpda/caching_sim.hpp"
#include "sccpda/finite_field.hpp"
#include "sccpda/pda.hpp"
#include "sccpda/secret_sharing.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sccpda {

struct Observer {
  // 0 for the shared-link eavesdropper, otherwise the 1-based user.
  int user = 0;

  static Observer of_user(int k) { return Observer{k}; }
  static Observer eavesdropper() { return Observer{0}; }
  bool is_eavesdropper() const { return user == 0; }
  std::string label() const;
  friend constexpr bool operator==(Observer, Observer) = default;
};

// Deliberate weakenings of the scheme. The audit must flag the ones that
// leak; the intact scheme is the empty ablation.
struct Ablation {
  std::vector<int> unkeyed_slots;       // X_s sent without T_s
  std::vector<int> granted_keys;        // observer also holds T_s
  std::vector<int> exposed_keyvecs;     // observer also holds all of V^n
  std::vector<ShareRef> granted_shares; // observer also holds S^n_j

  bool empty() const {
    return unkeyed_slots.empty() && granted_keys.empty() && exposed_keyvecs.empty() &&
           granted_shares.empty();
  }
  std::string describe() const;
};

// One uniform unknown symbol at a single symbol position.
struct Unknown {
  enum class Kind { W, V, T };
  Kind kind;
  int file;  // 1-based; 0 for T
  int index; // subfile, key, or slot index, 1-based
  std::string label() const;
};

// Observations = A * protected + Bmat * cover, one row per observed
// symbol, over a single symbol position.
struct ObservationSystem {
  Observer observer;
  std::vector<int> demand;
  Field field{1};
  std::vector<std::string> observations;
  std::vector<Unknown> protected_unknowns;
  std::vector<Unknown> cover_unknowns;
  Matrix A;
  Matrix Bmat;
};

ObservationSystem build_observation(const Pda &pda, int N, const CauchyMatrix &g,
                                    Observer observer, const std::vector<int> &demand,
                                    const Ablation &ablation = {});

// Observations of Z shares (given 1-based rows) of one file: protected
// are its F - Z subfiles, cover its Z keys.
ObservationSystem share_subset_observation(const CauchyMatrix &g, int Z,
                                           const std::vector<int> &rows);

struct Witness {
  // Combination of observations ...
  std::vector<std::pair<Element, std::string>> combination;
  // ... that equals this combination of protected unknowns alone.
  std::vector<std::pair<Element, std::string>> exposes;
};

struct LeakageReport {
  Observer observer;
  std::vector<int> demand;
  bool leak_free = true;
  std::size_t rank_cover = 0;
  std::size_t rank_total = 0;
  // (rank_total - rank_cover) * r: exact mutual information per symbol
  // position for uniform independent unknowns.
  std::size_t leaked_bits = 0;
  std::optional<Witness> witness;
  std::string method = "rank";
};

// leak_free iff rank(Bmat) == rank([A | Bmat]).
LeakageReport certify_zero_leakage(const ObservationSystem &obs);

// Every d in [N]^K when N^K <= 4096; otherwise 256 seeded samples plus
// all constant demands.
std::vector<std::vector<int>> demand_set(int N, int K, std::uint64_t seed = 0);

struct AuditResult {
  std::vector<LeakageReport> reports; // by (observer, demand); eavesdropper last
  bool all_leak_free() const;
  std::size_t leaking() const;
};

AuditResult audit_system(const Pda &pda, int N, const CauchyMatrix &g,
                         const std::vector<std::vector<int>> &demands,
                         const Ablation &ablation = {}, bool include_eavesdropper = true);

struct MiResult {
  double bits = 0.0;        // I(protected; view)
  bool exact_zero = false;  // independence verified on integer counts
  std::uint64_t states = 0; // realizations enumerated
};

// Exhaustive oracle: runs setup and deliver for every realization of the
// files, V and T, and measures the observer's mutual information with the
// files it must not learn. Throws DomainError when more than `max_bits`
// random bits would have to be enumerated.
MiResult brute_force_mi(const SystemConfig &cfg, Observer observer, const std::vector<int> &demand,
                        const Ablation &ablation = {}, unsigned max_bits = 24);

// Random bits brute_force_mi would enumerate for `cfg`.
std::uint64_t enumeration_bits(const SystemConfig &cfg);

struct CrossCheck {
  Observer observer;
  std::vector<int> demand;
  std::string ablation;
  bool rank_leak_free = false;
  std::size_t rank_leaked_bits = 0;
  MiResult mi;
  bool agree = false;
};

struct CrossValidation {
  std::vector<CrossCheck> checks;
  bool all_agree() const;
};

// Runs both the rank certificate and the exhaustive oracle for every
// observer, demand, and ablation (the intact scheme is always included).
CrossValidation cross_validate(const SystemConfig &cfg, const std::vector<std::vector<int>> &demands,
                               const std::vector<Ablation> &ablations = {});

} // namespace sccpda
