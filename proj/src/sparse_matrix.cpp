#include "ranky/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace ranky {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols,
                           std::vector<Entry> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    if (e.row >= rows_ || e.col >= cols_) {
      throw std::invalid_argument("sparse entry (" + std::to_string(e.row) + ", " +
                                  std::to_string(e.col) + ") outside " +
                                  std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    if (e.value == 0.0) {
      throw std::invalid_argument("sparse entry (" + std::to_string(e.row) + ", " +
                                  std::to_string(e.col) + ") stores zero");
    }
    if (i > 0 && entries_[i - 1].row == e.row && entries_[i - 1].col == e.col) {
      throw std::invalid_argument("duplicate sparse entry (" + std::to_string(e.row) +
                                  ", " + std::to_string(e.col) + ")");
    }
  }
  row_ptr_.assign(rows_ + 1, 0);
  for (const Entry& e : entries_) ++row_ptr_[e.row + 1];
  for (std::size_t r = 0; r < rows_; ++r) row_ptr_[r + 1] += row_ptr_[r];
}

std::span<const Entry> SparseMatrix::row_entries(std::size_t row) const& {
  if (row >= rows_) throw std::out_of_range("row " + std::to_string(row));
  return {entries_.data() + row_ptr_[row], row_ptr_[row + 1] - row_ptr_[row]};
}

std::size_t SparseMatrix::count_in_columns(std::size_t row, std::size_t col_begin,
                                           std::size_t col_end) const {
  auto span = row_entries(row);
  auto lo = std::lower_bound(span.begin(), span.end(), col_begin,
                             [](const Entry& e, std::size_t c) { return e.col < c; });
  auto hi = std::lower_bound(lo, span.end(), col_end,
                             [](const Entry& e, std::size_t c) { return e.col < c; });
  return static_cast<std::size_t>(hi - lo);
}

}  // namespace ranky
