#pragma once

#include <cstdint>

namespace ranky {

// Deterministic counter-based generator. Streams are keyed by
// (seed, block, row), so draws for one (block, row) pair do not depend on
// processing order or worker count. Fixed-width arithmetic only; identical
// output on every platform.
class KeyedRng {
 public:
  KeyedRng(std::uint64_t seed, std::uint64_t block, std::uint64_t row);

  std::uint64_t next();

  // Uniform in [0, bound); bound must be nonzero. Unbiased via rejection.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [0, 1) with 53 random bits.
  double unit();

 private:
  std::uint64_t state_;
};

}  // namespace ranky
