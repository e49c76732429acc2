#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace drlse {

/// SplitMix64 finalizer. Used to derive independent stream seeds from a base seed.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

/// Seedable generator with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. Uniform and normal variates are derived here rather than through
/// the <random> distributions, whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Standard normal via the Box-Muller transform.
  double normal();

  /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::size_t index(std::size_t n);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Named sub-streams of a single run. Each gets its own generator, drawn in
/// this fixed order from the run seed.
enum class Stream : std::uint64_t {
  InitialDesign = 0,
  Noise = 1,
  Selection = 2,
  NaiveSampling = 3,
};

inline Rng make_stream(std::uint64_t seed, Stream s) {
  return Rng(mix_seed(seed, static_cast<std::uint64_t>(s)));
}

}  // namespace drlse
