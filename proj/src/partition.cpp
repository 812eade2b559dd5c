#include "ranky/partition.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ranky {

BlockPartition::BlockPartition(std::size_t total_cols, std::vector<ColumnRange> ranges)
    : total_cols_(total_cols), ranges_(std::move(ranges)) {
  std::size_t expect = 0;
  for (const ColumnRange& r : ranges_) {
    if (r.begin != expect || r.end <= r.begin) {
      throw std::invalid_argument("partition ranges must be contiguous and nonempty");
    }
    expect = r.end;
  }
  if (expect != total_cols_) {
    throw std::invalid_argument("partition ranges must cover all columns");
  }
}

const ColumnRange& BlockPartition::range(std::size_t d) const {
  if (d >= ranges_.size()) {
    throw std::out_of_range("block index " + std::to_string(d) + " of " +
                            std::to_string(ranges_.size()));
  }
  return ranges_[d];
}

std::size_t BlockPartition::block_of(std::size_t col) const {
  if (col >= total_cols_) throw std::out_of_range("column " + std::to_string(col));
  auto it = std::upper_bound(ranges_.begin(), ranges_.end(), col,
                             [](std::size_t c, const ColumnRange& r) { return c < r.end; });
  return static_cast<std::size_t>(it - ranges_.begin());
}

BlockPartition partition_columns(std::size_t n_cols, std::size_t block_count) {
  if (block_count == 0 || block_count > n_cols) {
    throw std::invalid_argument("cannot split " + std::to_string(n_cols) +
                                " columns into " + std::to_string(block_count) +
                                " blocks");
  }
  const std::size_t width = n_cols / block_count;
  std::vector<ColumnRange> ranges(block_count);
  for (std::size_t d = 0; d < block_count; ++d) {
    ranges[d].begin = d * width;
    ranges[d].end = d + 1 == block_count ? n_cols : (d + 1) * width;
  }
  return BlockPartition(n_cols, std::move(ranges));
}

SparseMatrix block_view(const SparseMatrix& a, const BlockPartition& p, std::size_t d) {
  const ColumnRange& range = p.range(d);
  std::vector<Entry> entries;
  for (const Entry& e : a.entries()) {
    if (e.col >= range.begin && e.col < range.end) {
      entries.push_back({e.row, e.col - range.begin, e.value});
    }
  }
  return SparseMatrix(a.rows(), range.width(), std::move(entries));
}

}  // namespace ranky
