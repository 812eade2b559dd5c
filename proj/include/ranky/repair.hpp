#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ranky/partition.hpp"
#include "ranky/rng.hpp"
#include "ranky/sparse_matrix.hpp"

namespace ranky {

enum class RepairMethod {
  kRandom,
  kNeighbor,
  kNeighborRandom,
  kNone,
};

std::string to_string(RepairMethod method);
RepairMethod repair_method_from_string(const std::string& name);

struct AddedEdge {
  std::size_t block = 0;
  std::size_t row = 0;
  std::size_t col = 0;  // global column index
  // Mechanism that placed the edge: kRandom or kNeighbor.
  RepairMethod mechanism = RepairMethod::kRandom;

  friend bool operator==(const AddedEdge&, const AddedEdge&) = default;
};

// Audit log of a repair run: every inserted edge, the lonely-row count per
// block before repair, and how often NeighborChecker had no candidate and
// fell back to a random column.
struct RepairReport {
  std::vector<AddedEdge> added_edges;
  std::vector<std::size_t> lonely_counts;
  std::size_t fallback_count = 0;

  // Line-oriented log: `block<TAB>row<TAB>col<TAB>method` per edge plus a
  // trailer with the counts.
  std::string to_log() const;

  friend bool operator==(const RepairReport&, const RepairReport&) = default;
};

// Rows of `a` with no entry inside block d's column range, ascending.
std::vector<std::size_t> find_lonely_rows(const SparseMatrix& a,
                                          const BlockPartition& p, std::size_t d);

// Mutable working copy of a matrix used while inserting repair edges. The
// single-row checkers mutate it in place; to_matrix() snapshots the result.
class RepairWorkspace {
 public:
  RepairWorkspace(const SparseMatrix& a, const BlockPartition& p);

  // Uniformly random column of block d; inserts value 1.0 at (row, col).
  std::size_t apply_random(std::size_t d, std::size_t row, KeyedRng& rng);

  // Scans blocks other than d for rows sharing a column with `row`; collects
  // those rows' nonzero columns inside block d; picks one uniformly. Returns
  // nothing (and leaves the matrix unmodified) when no such column exists.
  std::optional<std::size_t> apply_neighbor(std::size_t d, std::size_t row,
                                            KeyedRng& rng);

  // NeighborChecker followed unconditionally by RandomChecker. Returns the
  // distinct columns inserted (one when the random pick coincides).
  std::vector<std::size_t> apply_neighbor_random(std::size_t d, std::size_t row,
                                                 KeyedRng& rng);

  bool has_entry(std::size_t row, std::size_t col) const;
  bool row_lonely_in_block(std::size_t d, std::size_t row) const;
  std::vector<std::size_t> lonely_rows(std::size_t d) const;

  SparseMatrix to_matrix() const;

 private:
  void insert(std::size_t row, std::size_t col);

  const SparseMatrix* origin_;
  const BlockPartition* partition_;
  std::vector<std::vector<std::size_t>> row_cols_;  // sorted columns per row
  std::vector<std::vector<std::size_t>> col_rows_;  // sorted rows per column
};

// Applies the chosen checker to every lonely row, blocks in ascending order,
// rows in ascending order. The input matrix is not modified. Deterministic in
// (a, p, method, seed). Within repair, NeighborChecker falls back to a random
// column when it finds no candidate, so no method leaves a lonely row behind.
std::pair<SparseMatrix, RepairReport> repair(const SparseMatrix& a,
                                             const BlockPartition& p,
                                             RepairMethod method,
                                             std::uint64_t seed);

// Estimated probability that filling one empty row at random leaves the block
// rank equal to the full-matrix rank: 1 - single_entry_rows/columns, clamped
// to [0, 1].
double rank_equal_probability(std::size_t columns, std::size_t single_entry_rows);

}  // namespace ranky
