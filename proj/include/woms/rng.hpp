#pragma once

#include <cstdint>
#include <random>

namespace woms {

/// A seeded, independently addressable random stream.
///
/// Identical (seed, stream_id) pairs produce identical sequences on every
/// platform: the engine is std::mt19937_64 (fully specified by the standard)
/// seeded through std::seed_seq, and the real-valued transforms below are
/// written out rather than delegated to implementation-defined
/// std:: distributions. Replica k of a batch uses stream_id = k.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double next_uniform();
  /// Standard normal variate (Marsaglia polar method).
  double next_gaussian();
  /// Raw 64-bit output.
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace woms
