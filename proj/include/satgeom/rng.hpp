#pragma once

// Reproducible random streams. Trial i of an experiment seeded with s draws
// from Rng(derive_seed(s, i)), so results do not depend on how trials are
// scheduled across workers.

#include <cstdint>
#include <random>

namespace satgeom::rnd {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Counter-mode mixing of a master seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, n) by rejection; n > 0.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace satgeom::rnd
