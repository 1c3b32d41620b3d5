#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace bmcheck {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
/// Stateless: output is a pure function of (counter, key).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key);
};

std::uint64_t splitmix64(std::uint64_t x);

/// Stable key derivation: same (master, stage, index) gives the same key on
/// every platform and run.
std::uint64_t derive_key(std::uint64_t master, std::string_view stage,
                         std::uint64_t index = 0);

/// Deterministic random stream addressed by (key, stream, lane).
///
/// Draws are taken block by block from Philox with counter
/// (block, lane, stream_lo, stream_hi), so two substreams with different
/// addresses never overlap and each can be regenerated independently of any
/// other, in any order, on any thread.
class Substream {
 public:
  Substream(std::uint64_t key, std::uint64_t stream, std::uint32_t lane = 0);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal via Box-Muller; both variates of a pair are used.
  double normal();

  /// Uniform integer in [0, bound) without modulo bias (Lemire).
  std::uint64_t below(std::uint64_t bound);

 private:
  void refill();

  Philox4x32::Key key_;
  Philox4x32::Counter counter_;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bmcheck
