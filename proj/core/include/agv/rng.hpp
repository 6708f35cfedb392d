#pragma once

#include <cstdint>
#include <random>

namespace agv {

/// Deterministic generator for one (seed, stream) pair.
///
/// Streams are independent of each other, so trial t of a search can be
/// replayed without running trials 1..t-1. Bounded draws use rejection
/// sampling rather than std::uniform_int_distribution, whose output is not
/// portable across standard libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound); bound must be nonzero.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace agv
