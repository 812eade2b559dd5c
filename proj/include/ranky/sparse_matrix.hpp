#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ranky {

struct Entry {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;

  friend bool operator==(const Entry&, const Entry&) = default;
};

// Immutable coordinate-form sparse matrix. Entries are kept sorted by
// (row, col); duplicates, zero values and out-of-range indices are rejected
// at construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Entry> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }

  // Spans view into this matrix; calling them on a temporary would dangle.
  std::span<const Entry> entries() const& { return entries_; }
  std::span<const Entry> entries() const&& = delete;

  // Entries of one row, sorted by column.
  std::span<const Entry> row_entries(std::size_t row) const&;
  std::span<const Entry> row_entries(std::size_t row) const&& = delete;

  // Number of entries of `row` with column in [col_begin, col_end).
  std::size_t count_in_columns(std::size_t row, std::size_t col_begin,
                               std::size_t col_end) const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> entries_;       // sorted by (row, col)
  std::vector<std::size_t> row_ptr_; // rows_ + 1 offsets into entries_
};

}  // namespace ranky
