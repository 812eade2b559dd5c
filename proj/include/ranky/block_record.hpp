#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "ranky/svd.hpp"

namespace ranky {

// Per-block U*Sigma payload exchanged between workers and the coordinator.
// File layout, all integers little-endian: magic "RNKY", version u16 = 1,
// block index u32, rows u32, k u32, rows*k IEEE-754 doubles row-major,
// CRC32 of the payload bytes (u32).
struct BlockResultRecord {
  std::uint32_t block_index = 0;
  std::uint32_t rows = 0;
  std::uint32_t kept = 0;
  std::vector<double> payload;  // rows * kept, row-major

  friend bool operator==(const BlockResultRecord&, const BlockResultRecord&) = default;
};

// Payload = U with column j scaled by sigma[j].
BlockResultRecord make_block_record(std::size_t block_index, const SvdResult& svd);

void write_block_record(const BlockResultRecord& record,
                        const std::filesystem::path& path);
BlockResultRecord read_block_record(const std::filesystem::path& path);

std::uint32_t crc32(const void* data, std::size_t size);

}  // namespace ranky
