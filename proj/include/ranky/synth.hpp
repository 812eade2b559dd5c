#pragma once

#include <cstdint>

#include "ranky/sparse_matrix.hpp"

namespace ranky {

// Random unweighted bipartite adjacency matrix: every cell holds an edge
// (value 1.0) independently with probability `density`. Pure function of its
// arguments.
SparseMatrix synth_bipartite(std::size_t rows, std::size_t cols, double density,
                             std::uint64_t seed);

}  // namespace ranky
