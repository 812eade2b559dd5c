#pragma once

#include <filesystem>

#include "ranky/sparse_matrix.hpp"

namespace ranky {

// Coordinate-format Matrix Market, header
// `%%MatrixMarket matrix coordinate real general`, 1-based indices.
// Loading a saved matrix reproduces it exactly; written values use the
// shortest decimal form that round-trips.
SparseMatrix load_matrix_market(const std::filesystem::path& path);
void save_matrix_market(const SparseMatrix& a, const std::filesystem::path& path);

}  // namespace ranky
