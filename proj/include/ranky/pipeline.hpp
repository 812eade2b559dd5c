#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ranky/block_record.hpp"
#include "ranky/partition.hpp"
#include "ranky/proxy.hpp"
#include "ranky/repair.hpp"
#include "ranky/sparse_matrix.hpp"
#include "ranky/svd.hpp"

namespace ranky {

// Unit of work handed to a worker: one repaired block.
struct BlockTask {
  std::size_t block_index = 0;
  SparseMatrix block;
  std::size_t keep = 0;  // 0 = full reduced SVD
};

BlockResultRecord run_block_task(const BlockTask& task);

// Proxy assembly from worker records. Records are ordered by block index
// internally, so arrival order never affects the result.
ProxyMatrix proxy_from_records(std::span<const BlockResultRecord> records,
                               std::size_t rows);

struct PipelineResult {
  SvdResult svd;  // sigma + U of the input matrix (V not populated)
  RepairReport report;
  SparseMatrix repaired;
  BlockPartition partition;
  std::vector<BlockResultRecord> records;  // ordered by block index
};

// partition -> repair (coordinator) -> per-block SVD on a worker pool ->
// ordered proxy assembly -> proxy SVD. Output is identical for any `workers`
// value and any scheduling order. A failing block task fails the run with the
// block index named.
PipelineResult run_pipeline(const SparseMatrix& a, std::size_t block_count,
                            RepairMethod method, std::size_t keep,
                            std::uint64_t seed, std::size_t workers);

}  // namespace ranky
