#include "ranky/rng.hpp"

namespace ranky {

namespace {

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

KeyedRng::KeyedRng(std::uint64_t seed, std::uint64_t block, std::uint64_t row) {
  state_ = mix(seed + 0x9e3779b97f4a7c15ull);
  state_ = mix(state_ ^ (block + 0xbf58476d1ce4e5b9ull));
  state_ = mix(state_ ^ (row + 0x94d049bb133111ebull));
}

std::uint64_t KeyedRng::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  return mix(state_);
}

std::uint64_t KeyedRng::below(std::uint64_t bound) {
  // rejection of the biased tail: accept r >= 2^64 mod bound
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

double KeyedRng::unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

}  // namespace ranky
