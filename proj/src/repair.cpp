#include "ranky/repair.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ranky {

std::string to_string(RepairMethod method) {
  switch (method) {
    case RepairMethod::kRandom: return "random";
    case RepairMethod::kNeighbor: return "neighbor";
    case RepairMethod::kNeighborRandom: return "neighbor-random";
    case RepairMethod::kNone: return "none";
  }
  throw std::invalid_argument("bad repair method");
}

RepairMethod repair_method_from_string(const std::string& name) {
  if (name == "random") return RepairMethod::kRandom;
  if (name == "neighbor") return RepairMethod::kNeighbor;
  if (name == "neighbor-random") return RepairMethod::kNeighborRandom;
  if (name == "none") return RepairMethod::kNone;
  throw std::invalid_argument("unknown repair method '" + name + "'");
}

std::string RepairReport::to_log() const {
  std::ostringstream out;
  for (const AddedEdge& e : added_edges) {
    out << e.block << '\t' << e.row << '\t' << e.col << '\t' << to_string(e.mechanism)
        << '\n';
  }
  out << "# lonely=";
  for (std::size_t d = 0; d < lonely_counts.size(); ++d) {
    if (d) out << ',';
    out << lonely_counts[d];
  }
  out << " fallback=" << fallback_count << '\n';
  return out.str();
}

std::vector<std::size_t> find_lonely_rows(const SparseMatrix& a,
                                          const BlockPartition& p, std::size_t d) {
  const ColumnRange& range = p.range(d);
  std::vector<std::size_t> lonely;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    if (a.count_in_columns(r, range.begin, range.end) == 0) lonely.push_back(r);
  }
  return lonely;
}

RepairWorkspace::RepairWorkspace(const SparseMatrix& a, const BlockPartition& p)
    : origin_(&a), partition_(&p), row_cols_(a.rows()), col_rows_(a.cols()) {
  if (p.total_cols() != a.cols()) {
    throw std::invalid_argument("partition does not match matrix columns");
  }
  for (const Entry& e : a.entries()) {
    row_cols_[e.row].push_back(e.col);
    col_rows_[e.col].push_back(e.row);
  }
  // entries arrive sorted by (row, col), so row_cols_ is sorted; col_rows_
  // gains rows in ascending order for the same reason
}

bool RepairWorkspace::has_entry(std::size_t row, std::size_t col) const {
  const auto& cols = row_cols_[row];
  return std::binary_search(cols.begin(), cols.end(), col);
}

bool RepairWorkspace::row_lonely_in_block(std::size_t d, std::size_t row) const {
  const ColumnRange& range = partition_->range(d);
  const auto& cols = row_cols_[row];
  auto it = std::lower_bound(cols.begin(), cols.end(), range.begin);
  return it == cols.end() || *it >= range.end;
}

std::vector<std::size_t> RepairWorkspace::lonely_rows(std::size_t d) const {
  std::vector<std::size_t> lonely;
  for (std::size_t r = 0; r < row_cols_.size(); ++r) {
    if (row_lonely_in_block(d, r)) lonely.push_back(r);
  }
  return lonely;
}

void RepairWorkspace::insert(std::size_t row, std::size_t col) {
  auto& cols = row_cols_[row];
  auto it = std::lower_bound(cols.begin(), cols.end(), col);
  if (it != cols.end() && *it == col) return;  // idempotent
  cols.insert(it, col);
  auto& rows = col_rows_[col];
  auto rit = std::lower_bound(rows.begin(), rows.end(), row);
  rows.insert(rit, row);
}

std::size_t RepairWorkspace::apply_random(std::size_t d, std::size_t row,
                                          KeyedRng& rng) {
  const ColumnRange& range = partition_->range(d);
  const std::size_t col = range.begin + rng.below(range.width());
  insert(row, col);
  return col;
}

std::optional<std::size_t> RepairWorkspace::apply_neighbor(std::size_t d,
                                                           std::size_t row,
                                                           KeyedRng& rng) {
  const ColumnRange& range = partition_->range(d);

  // rows sharing a column with `row` anywhere outside block d
  std::vector<std::size_t> candidates;
  for (std::size_t col : row_cols_[row]) {
    if (col >= range.begin && col < range.end) continue;
    const auto& rows = col_rows_[col];
    candidates.insert(candidates.end(), rows.begin(), rows.end());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());

  // candidate rows' nonzero columns inside block d
  std::vector<std::size_t> neighbor_cols;
  for (std::size_t m : candidates) {
    const auto& cols = row_cols_[m];
    auto lo = std::lower_bound(cols.begin(), cols.end(), range.begin);
    auto hi = std::lower_bound(lo, cols.end(), range.end);
    neighbor_cols.insert(neighbor_cols.end(), lo, hi);
  }
  std::sort(neighbor_cols.begin(), neighbor_cols.end());
  neighbor_cols.erase(std::unique(neighbor_cols.begin(), neighbor_cols.end()),
                      neighbor_cols.end());

  if (neighbor_cols.empty()) return std::nullopt;
  const std::size_t col = neighbor_cols[rng.below(neighbor_cols.size())];
  insert(row, col);
  return col;
}

std::vector<std::size_t> RepairWorkspace::apply_neighbor_random(std::size_t d,
                                                                std::size_t row,
                                                                KeyedRng& rng) {
  std::vector<std::size_t> added;
  if (auto col = apply_neighbor(d, row, rng)) added.push_back(*col);
  const std::size_t random_col = apply_random(d, row, rng);
  if (added.empty() || added.front() != random_col) added.push_back(random_col);
  return added;
}

SparseMatrix RepairWorkspace::to_matrix() const {
  std::vector<Entry> entries;
  for (std::size_t r = 0; r < row_cols_.size(); ++r) {
    std::size_t orig = 0;
    auto orig_span = origin_->row_entries(r);
    for (std::size_t col : row_cols_[r]) {
      // preserve the original value where one exists; added edges are 1.0
      while (orig < orig_span.size() && orig_span[orig].col < col) ++orig;
      const bool existing = orig < orig_span.size() && orig_span[orig].col == col;
      entries.push_back({r, col, existing ? orig_span[orig].value : 1.0});
    }
  }
  return SparseMatrix(origin_->rows(), origin_->cols(), std::move(entries));
}

std::pair<SparseMatrix, RepairReport> repair(const SparseMatrix& a,
                                             const BlockPartition& p,
                                             RepairMethod method,
                                             std::uint64_t seed) {
  RepairReport report;
  report.lonely_counts.assign(p.block_count(), 0);
  if (method == RepairMethod::kNone) return {a, report};

  RepairWorkspace ws(a, p);
  for (std::size_t d = 0; d < p.block_count(); ++d) {
    // loneliness in block d only depends on columns of block d, so repairs to
    // earlier blocks cannot change this scan
    const std::vector<std::size_t> lonely = ws.lonely_rows(d);
    report.lonely_counts[d] = lonely.size();
    for (std::size_t row : lonely) {
      KeyedRng rng(seed, d, row);
      switch (method) {
        case RepairMethod::kRandom: {
          const std::size_t col = ws.apply_random(d, row, rng);
          report.added_edges.push_back({d, row, col, RepairMethod::kRandom});
          break;
        }
        case RepairMethod::kNeighbor: {
          if (auto col = ws.apply_neighbor(d, row, rng)) {
            report.added_edges.push_back({d, row, *col, RepairMethod::kNeighbor});
          } else {
            // fully isolated row: fall back so the no-lonely-rows
            // postcondition holds for every method
            const std::size_t fallback_col = ws.apply_random(d, row, rng);
            report.added_edges.push_back({d, row, fallback_col, RepairMethod::kRandom});
            ++report.fallback_count;
          }
          break;
        }
        case RepairMethod::kNeighborRandom: {
          if (auto neighbor_col = ws.apply_neighbor(d, row, rng)) {
            report.added_edges.push_back(
                {d, row, *neighbor_col, RepairMethod::kNeighbor});
          }
          const std::size_t random_col = ws.apply_random(d, row, rng);
          if (report.added_edges.empty() ||
              report.added_edges.back().block != d ||
              report.added_edges.back().row != row ||
              report.added_edges.back().col != random_col) {
            report.added_edges.push_back({d, row, random_col, RepairMethod::kRandom});
          }
          break;
        }
        case RepairMethod::kNone:
          break;
      }
    }
  }
  return {ws.to_matrix(), std::move(report)};
}

double rank_equal_probability(std::size_t columns, std::size_t single_entry_rows) {
  if (columns == 0) throw std::invalid_argument("column count must be positive");
  if (single_entry_rows >= columns) return 0.0;
  return static_cast<double>(columns - single_entry_rows) /
         static_cast<double>(columns);
}

}  // namespace ranky
