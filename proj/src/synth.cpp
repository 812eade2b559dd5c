#include "ranky/synth.hpp"

#include <stdexcept>

#include "ranky/rng.hpp"

namespace ranky {

namespace {
// Key-space tag separating synth streams from repair streams.
constexpr std::uint64_t kSynthTag = 0x53594e5448ull;  // "SYNTH"
}  // namespace

SparseMatrix synth_bipartite(std::size_t rows, std::size_t cols, double density,
                             std::uint64_t seed) {
  if (!(density > 0.0) || density > 1.0) {
    throw std::invalid_argument("density must be in (0, 1]");
  }
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(density * static_cast<double>(rows) *
                  static_cast<double>(cols)));
  for (std::size_t r = 0; r < rows; ++r) {
    KeyedRng rng(seed, kSynthTag, r);
    for (std::size_t c = 0; c < cols; ++c) {
      if (rng.unit() < density) entries.push_back({r, c, 1.0});
    }
  }
  return SparseMatrix(rows, cols, std::move(entries));
}

}  // namespace ranky
