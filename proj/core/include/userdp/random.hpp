#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace userdp {

// Deterministic random stream. The engine is mt19937_64, whose output
// sequence is fixed by the standard; the distribution helpers below are
// implemented by hand so that results do not depend on which standard
// library the binary was built against.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1), never returns an exact endpoint. Safe to pass to log().
  double uniform_open() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the paired value is cached.
  double gaussian();

  // Uniform integer in [0, n). Rejection sampling, no modulo bias.
  std::uint64_t uniform_index(std::uint64_t n);

  // Draws a seed suitable for an independent sub-stream.
  std::uint64_t next_seed() { return next_u64(); }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Stateless seed derivation for addressable sub-streams, e.g. one stream per
// (grid point, trial). splitmix64-style mixing of the path into the base seed.
std::uint64_t derive_seed(std::uint64_t base,
                          std::initializer_list<std::uint64_t> path);

}  // namespace userdp
