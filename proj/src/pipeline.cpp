#include "ranky/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <string>
#include <thread>

namespace ranky {

BlockResultRecord run_block_task(const BlockTask& task) {
  const std::size_t k_full = std::min(task.block.rows(), task.block.cols());
  const std::size_t keep = task.keep == 0 ? k_full : std::min(task.keep, k_full);
  const SvdResult svd = block_svd(task.block, keep);
  return make_block_record(task.block_index, svd);
}

ProxyMatrix proxy_from_records(std::span<const BlockResultRecord> records,
                               std::size_t rows) {
  std::vector<const BlockResultRecord*> ordered;
  ordered.reserve(records.size());
  for (const BlockResultRecord& r : records) ordered.push_back(&r);
  std::sort(ordered.begin(), ordered.end(),
            [](const BlockResultRecord* a, const BlockResultRecord* b) {
              return a->block_index < b->block_index;
            });
  for (std::size_t i = 1; i < ordered.size(); ++i) {
    if (ordered[i - 1]->block_index == ordered[i]->block_index) {
      throw std::invalid_argument("duplicate block record index " +
                                  std::to_string(ordered[i]->block_index));
    }
  }

  std::size_t total_cols = 0;
  for (const BlockResultRecord* r : ordered) {
    if (r->rows != rows) {
      throw std::invalid_argument("block record " + std::to_string(r->block_index) +
                                  " has " + std::to_string(r->rows) +
                                  " rows, expected " + std::to_string(rows));
    }
    total_cols += r->kept;
  }

  ProxyMatrix proxy;
  proxy.matrix = DenseMatrix(rows, total_cols);
  proxy.block_offsets.reserve(ordered.size() + 1);
  std::size_t offset = 0;
  for (const BlockResultRecord* r : ordered) {
    proxy.block_offsets.push_back(offset);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < r->kept; ++j) {
        proxy.matrix(i, offset + j) = r->payload[i * r->kept + j];
      }
    }
    offset += r->kept;
  }
  proxy.block_offsets.push_back(offset);
  return proxy;
}

PipelineResult run_pipeline(const SparseMatrix& a, std::size_t block_count,
                            RepairMethod method, std::size_t keep,
                            std::uint64_t seed, std::size_t workers) {
  if (workers == 0) throw std::invalid_argument("workers must be >= 1");
  BlockPartition partition = partition_columns(a.cols(), block_count);

  // NeighborChecker reads blocks other than the one under repair, so repair
  // runs on the coordinator before any dispatch.
  auto [repaired, report] = repair(a, partition, method, seed);

  std::vector<BlockTask> tasks;
  tasks.reserve(block_count);
  for (std::size_t d = 0; d < block_count; ++d) {
    tasks.push_back({d, block_view(repaired, partition, d), keep});
  }

  // Results land in the slot named by their block index; scheduling order and
  // worker count cannot influence the merge.
  std::vector<BlockResultRecord> records(block_count);
  std::vector<std::string> failures(block_count);
  std::atomic<std::size_t> next{0};
  auto worker_loop = [&] {
    for (;;) {
      const std::size_t d = next.fetch_add(1);
      if (d >= block_count) return;
      try {
        records[d] = run_block_task(tasks[d]);
      } catch (const std::exception& e) {
        failures[d] = e.what();
      }
    }
  };

  const std::size_t pool = std::min(workers, block_count);
  if (pool <= 1) {
    worker_loop();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(pool);
    for (std::size_t i = 0; i < pool; ++i) threads.emplace_back(worker_loop);
    for (std::thread& t : threads) t.join();
  }
  for (std::size_t d = 0; d < block_count; ++d) {
    if (!failures[d].empty()) {
      throw std::runtime_error("block task " + std::to_string(d) +
                               " failed: " + failures[d]);
    }
  }

  ProxyMatrix proxy = proxy_from_records(records, a.rows());
  SvdResult svd = proxy_svd(proxy);
  svd.v.reset();  // right vectors are not part of the distributed result

  PipelineResult result;
  result.svd = std::move(svd);
  result.report = std::move(report);
  result.repaired = std::move(repaired);
  result.partition = std::move(partition);
  result.records = std::move(records);
  return result;
}

}  // namespace ranky
