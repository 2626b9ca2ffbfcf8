#pragma once

#include "sccpda/bits.hpp"
#include "sccpda/pda.hpp"
#include "sccpda/rational.hpp"
#include "sccpda/secret_sharing.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sccpda {

struct SystemConfig {
  Pda pda;
  int N = 1;
  std::size_t B = 0;
  std::uint64_t seed = 0;
  Field field{1};
  std::optional<std::vector<Element>> cauchy_x;
  std::optional<std::vector<Element>> cauchy_y;

  // Uses the smallest field with 2^r >= 2F unless one is given.
  static SystemConfig make(Pda pda, int N, std::size_t B, std::uint64_t seed,
                           std::optional<Field> field = std::nullopt);
};

// Values that replace the seeded draws, category by category. Injected
// categories consume no generator output.
struct InjectedRandomness {
  std::optional<std::vector<Bits>> files;        // N files of B bits
  std::optional<std::vector<KeyVector>> keys;    // V^n for each file
  std::optional<std::vector<Symbols>> unique_keys; // T_1..T_S
};

// Share `share` (1-based row of the PDA) of file `file` (1-based).
struct ShareRef {
  int file;
  int share;
  friend constexpr auto operator<=>(const ShareRef &, const ShareRef &) = default;
};

struct Cache {
  int user = 0; // 1-based
  std::map<ShareRef, Symbols> shares;
  std::map<int, Symbols> keys; // slot s -> T_s

  std::size_t bits(const SharingParams &params) const {
    return (shares.size() + keys.size()) * params.share_bits();
  }
};

struct Message {
  int slot = 0;                // 1-based
  std::vector<ShareRef> terms; // XORed shares (subfiles for the baseline), by user
  std::optional<int> key;      // unique key XORed on, if any
  Bits payload;
};

struct Transcript {
  std::vector<int> demand; // d_k, 1-based files
  std::vector<Message> messages;
  std::size_t payload_bits = 0;
  std::size_t file_bits = 0;

  std::size_t bits_sent() const;
  // Link framing: per message a 2-byte big-endian slot index, then the
  // payload bytes. Headers are not counted in the rate.
  std::vector<std::uint8_t> frames() const;
};

class UserView;

class SystemState {
public:
  const SystemConfig &config() const { return config_; }
  const SharingParams &params() const { return params_; }
  const SchemeParams &scheme() const { return scheme_; }
  const CauchyMatrix &cauchy() const { return cauchy_; }

  const std::vector<Bits> &files() const { return files_; }
  const std::vector<SecretVector> &secrets() const { return secrets_; }
  const std::vector<KeyVector> &keyvecs() const { return keyvecs_; }
  const std::vector<ShareVector> &shares() const { return shares_; }
  const std::vector<Symbols> &unique_keys() const { return unique_keys_; }
  const Cache &cache(int user) const { return caches_.at(static_cast<std::size_t>(user - 1)); }
  const std::vector<Cache> &caches() const { return caches_; }

  // What user k may use to decode: its own cache and the broadcast.
  UserView view_of(int user, const Transcript &t) const;

private:
  friend SystemState setup(const SystemConfig &cfg, const InjectedRandomness &inject);
  explicit SystemState(const SystemConfig &cfg);

  SystemConfig config_;
  SharingParams params_;
  SchemeParams scheme_;
  CauchyMatrix cauchy_;
  std::vector<Bits> files_;
  std::vector<SecretVector> secrets_;
  std::vector<KeyVector> keyvecs_;
  std::vector<ShareVector> shares_;
  std::vector<Symbols> unique_keys_;
  std::vector<Cache> caches_;
};

// Encodes the library and fills the caches. Generator draws (mt19937_64,
// raw 64-bit outputs) happen in this order: file bytes (file ascending,
// byte ascending, low 8 bits of each draw), then V^n symbols (file
// ascending, key ascending, position ascending), then T_s symbols (slot
// ascending, position ascending); symbols take the low r bits of a draw.
SystemState setup(const SystemConfig &cfg, const InjectedRandomness &inject = {});

// Throws DomainError unless `demand` has K entries in [1, N].
void check_demand(const Pda &pda, int N, const std::vector<int> &demand);

// One message per slot s = 1..S: the XOR over cells (j, k) labelled s of
// share j of file d_k, then XOR T_s.
Transcript deliver(const SystemState &state, const std::vector<int> &demand);

// Everything user_decode is allowed to see.
class UserView {
public:
  UserView(int user, const Cache &cache, const Transcript &transcript, const Pda &pda,
           const CauchyMatrix &cauchy, const SharingParams &params)
      : user_(user), cache_(cache), transcript_(transcript), pda_(pda), cauchy_(cauchy),
        params_(params) {}

private:
  friend Bits user_decode(const UserView &view);
  int user_;
  const Cache &cache_;
  const Transcript &transcript_;
  const Pda &pda_;
  const CauchyMatrix &cauchy_;
  const SharingParams &params_;
};

// Recovers the B bits of W^{d_k}. A missing key or share throws
// InternalFault naming the PDA cell.
Bits user_decode(const UserView &view);

// Non-secretive baseline: F raw subfiles, uncoded keyless delivery.
struct BaselineState {
  Pda pda;
  int N = 1;
  std::size_t B = 0;
  std::size_t subfile_bits = 0; // ceil(B / F)
  std::vector<Bits> files;
  std::vector<std::vector<Bits>> subfiles; // [n][j]
  std::vector<std::map<ShareRef, Bits>> caches;
};

BaselineState baseline_place(const Pda &pda, int N, std::size_t B, std::uint64_t seed,
                             std::optional<std::vector<Bits>> files = std::nullopt);
Transcript baseline_deliver(const BaselineState &state, const std::vector<int> &demand);
Bits baseline_decode(const BaselineState &state, int user, const Transcript &t);

struct RateReport {
  std::string scheme; // "pda-secret" or "pda-plain"
  std::size_t messages = 0;
  std::size_t payload_bits = 0;
  std::size_t bits_sent = 0;
  std::size_t file_bits = 0;
  Rational measured;  // bits_sent / B
  Rational nominal;   // S/(F-Z) or S/F
  bool padded = false;
  bool matches_nominal = false;
};

// Checks the transcript's shape and rate accounting. Without padding the
// measured rate must equal the nominal one; otherwise InternalFault.
RateReport measure(const Transcript &t, const SystemState &state);
RateReport measure(const Transcript &t, const BaselineState &state);

} // namespace sccpda
