#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ranky/sparse_matrix.hpp"

namespace ranky {

struct ColumnRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // half-open

  std::size_t width() const { return end - begin; }

  friend bool operator==(const ColumnRange&, const ColumnRange&) = default;
};

// Column-wise split of an N-column matrix into contiguous blocks.
class BlockPartition {
 public:
  BlockPartition() = default;
  BlockPartition(std::size_t total_cols, std::vector<ColumnRange> ranges);

  std::size_t total_cols() const { return total_cols_; }
  std::size_t block_count() const { return ranges_.size(); }
  const ColumnRange& range(std::size_t d) const;
  std::span<const ColumnRange> ranges() const { return ranges_; }

  // Index of the block whose range contains column `col`.
  std::size_t block_of(std::size_t col) const;

  friend bool operator==(const BlockPartition&, const BlockPartition&) = default;

 private:
  std::size_t total_cols_ = 0;
  std::vector<ColumnRange> ranges_;
};

// First block_count-1 ranges get width floor(n_cols/block_count); the last
// range absorbs the remainder.
BlockPartition partition_columns(std::size_t n_cols, std::size_t block_count);

// Copy of block d's entries with columns re-indexed to start at 0.
SparseMatrix block_view(const SparseMatrix& a, const BlockPartition& p, std::size_t d);

}  // namespace ranky
