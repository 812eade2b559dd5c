#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "ranky/block_record.hpp"
#include "ranky/errors.hpp"
#include "ranky/metrics.hpp"
#include "ranky/pipeline.hpp"
#include "ranky/synth.hpp"
#include "test_support.hpp"

using namespace ranky;
using namespace ranky::testing;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

BlockResultRecord sample_record(std::uint64_t seed) {
  SparseMatrix block = synth_bipartite(6, 24, 0.4, seed);
  BlockTask task{2, block, 0};
  return run_block_task(task);
}

}  // namespace

TEST_CASE("crc32 matches the reference check value") {
  const char* s = "123456789";
  CHECK(crc32(s, 9) == 0xCBF43926u);
  CHECK(crc32(s, 0) == 0x00000000u);
}

TEST_CASE("block record round trip") {
  const auto path = temp_file("ranky_record_roundtrip.bin");
  BlockResultRecord r = sample_record(3);
  write_block_record(r, path);
  CHECK(read_block_record(path) == r);

  // file layout is bit-exact: write twice, compare bytes
  const auto path2 = temp_file("ranky_record_roundtrip2.bin");
  write_block_record(read_block_record(path), path2);
  std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
  std::string s1((std::istreambuf_iterator<char>(f1)), {});
  std::string s2((std::istreambuf_iterator<char>(f2)), {});
  CHECK(s1 == s2);
  CHECK(s1.substr(0, 4) == "RNKY");
  std::filesystem::remove(path);
  std::filesystem::remove(path2);
}

TEST_CASE("block record with no kept components is legal") {
  const auto path = temp_file("ranky_record_empty.bin");
  BlockResultRecord r;
  r.block_index = 9;
  r.rows = 4;
  r.kept = 0;
  write_block_record(r, path);
  BlockResultRecord back = read_block_record(path);
  CHECK(back == r);
  CHECK(back.payload.empty());
  std::filesystem::remove(path);
}

TEST_CASE("payload corruption is caught by the checksum") {
  const auto path = temp_file("ranky_record_corrupt.bin");
  BlockResultRecord r = sample_record(4);
  write_block_record(r, path);
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), {});
  in.close();

  std::mt19937_64 gen(1234);
  const std::size_t payload_begin = 18;
  const std::size_t payload_bytes = bytes.size() - payload_begin - 4;
  for (int trial = 0; trial < 100; ++trial) {
    std::string corrupted = bytes;
    const std::size_t byte = payload_begin + gen() % payload_bytes;
    const int bit = static_cast<int>(gen() % 8);
    corrupted[byte] = static_cast<char>(corrupted[byte] ^ (1 << bit));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(corrupted.data(), static_cast<std::streamsize>(corrupted.size()));
    out.close();
    CHECK_THROWS_AS(read_block_record(path), RecordError);
  }
  std::filesystem::remove(path);
}

TEST_CASE("malformed records are rejected") {
  const auto path = temp_file("ranky_record_bad.bin");
  BlockResultRecord r = sample_record(5);
  write_block_record(r, path);
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)), {});
  in.close();
  auto rewrite = [&](const std::string& b) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(b.data(), static_cast<std::streamsize>(b.size()));
  };

  SUBCASE("wrong magic") {
    std::string b = bytes;
    b[0] = 'X';
    rewrite(b);
    CHECK_THROWS_AS(read_block_record(path), RecordError);
  }
  SUBCASE("wrong version") {
    std::string b = bytes;
    b[4] = 2;
    rewrite(b);
    CHECK_THROWS_AS(read_block_record(path), RecordError);
  }
  SUBCASE("truncated payload") {
    rewrite(bytes.substr(0, bytes.size() - 9));
    CHECK_THROWS_AS(read_block_record(path), RecordError);
  }
  SUBCASE("truncated header") {
    rewrite(bytes.substr(0, 10));
    CHECK_THROWS_AS(read_block_record(path), RecordError);
  }
  std::filesystem::remove(path);
}

TEST_CASE("proxy assembly ignores arrival order") {
  SparseMatrix a = synth_bipartite(8, 64, 0.2, 6);
  PipelineResult res = run_pipeline(a, 8, RepairMethod::kRandom, 0, 1, 1);
  std::vector<BlockResultRecord> shuffled = res.records;
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    ProxyMatrix p = proxy_from_records(shuffled, a.rows());
    ProxyMatrix q = proxy_from_records(res.records, a.rows());
    CHECK(p.matrix == q.matrix);
    CHECK(p.block_offsets == q.block_offsets);
  }

  std::vector<BlockResultRecord> duplicated = res.records;
  duplicated.push_back(res.records.front());
  CHECK_THROWS_AS(proxy_from_records(duplicated, a.rows()), std::invalid_argument);
}

TEST_CASE("single-block pipeline equals the dense factorization") {
  DenseMatrix dense = random_dense(5, 9, 123);
  SparseMatrix a = sparse_of(dense);
  PipelineResult res = run_pipeline(a, 1, RepairMethod::kNone, 0, 0, 1);
  SvdResult oracle = dense_svd(dense);
  REQUIRE(res.svd.sigma.size() == oracle.sigma.size());
  for (std::size_t i = 0; i < oracle.sigma.size(); ++i) {
    CHECK(std::abs(res.svd.sigma[i] - oracle.sigma[i]) <= 1e-12 * oracle.sigma[0]);
  }
  CHECK(left_vector_error(res.svd.u, oracle.u, oracle.sigma) <= 1e-10);
}

TEST_CASE("pipeline output is identical for any worker count") {
  SparseMatrix a = synth_bipartite(16, 96, 0.05, 8);
  PipelineResult base = run_pipeline(a, 6, RepairMethod::kNeighborRandom, 0, 3, 1);
  for (std::size_t workers : {2, 4, 8}) {
    PipelineResult res = run_pipeline(a, 6, RepairMethod::kNeighborRandom, 0, 3, workers);
    CHECK(res.svd.sigma == base.svd.sigma);
    CHECK(res.svd.u == base.svd.u);
    CHECK(res.records.size() == base.records.size());
    for (std::size_t d = 0; d < res.records.size(); ++d) {
      CHECK(res.records[d] == base.records[d]);
    }
    CHECK(res.report == base.report);
    CHECK(res.repaired == base.repaired);
  }
}

TEST_CASE("pipeline rejects bad arguments") {
  SparseMatrix a = synth_bipartite(4, 16, 0.5, 0);
  CHECK_THROWS_AS(run_pipeline(a, 0, RepairMethod::kNone, 0, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_pipeline(a, 17, RepairMethod::kNone, 0, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_pipeline(a, 2, RepairMethod::kNone, 0, 0, 0),
                  std::invalid_argument);
}

TEST_CASE("a failing block task names its block index") {
  // an infinite value passes sparse validation but the SVD kernel rejects it
  SparseMatrix a(2, 8,
                 {{0, 0, 1.0}, {0, 5, INFINITY}, {1, 2, 1.0}, {1, 7, 1.0}});
  try {
    run_pipeline(a, 2, RepairMethod::kNone, 0, 0, 1);
    FAIL("expected a pipeline failure");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("block task 1") != std::string::npos);
  }
}

TEST_CASE("pipeline repairs lonely rows before dispatch") {
  SparseMatrix a = synth_bipartite(8, 64, 0.03, 10);
  PipelineResult res = run_pipeline(a, 8, RepairMethod::kNeighbor, 0, 2, 2);
  for (std::size_t d = 0; d < 8; ++d) {
    CHECK(find_lonely_rows(res.repaired, res.partition, d).empty());
  }
  // every record carries the expected payload shape
  for (std::size_t d = 0; d < 8; ++d) {
    CHECK(res.records[d].block_index == d);
    CHECK(res.records[d].rows == 8);
    CHECK(res.records[d].kept == 8);
  }
}
