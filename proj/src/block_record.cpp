#include "ranky/block_record.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

#include "ranky/errors.hpp"

namespace ranky {

namespace {

constexpr char kMagic[4] = {'R', 'N', 'K', 'Y'};
constexpr std::uint16_t kVersion = 1;

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

double get_f64(const unsigned char* p) {
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return std::bit_cast<double>(bits);
}

}  // namespace

std::uint32_t crc32(const void* data, std::size_t size) {
  static const auto table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  const auto* bytes = static_cast<const unsigned char*>(data);
  std::uint32_t crc = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < size; ++i) {
    crc = (crc >> 8) ^ table[(crc ^ bytes[i]) & 0xFFu];
  }
  return crc ^ 0xFFFFFFFFu;
}

BlockResultRecord make_block_record(std::size_t block_index, const SvdResult& svd) {
  if (svd.u.cols() != svd.sigma.size()) {
    throw std::invalid_argument("make_block_record: U columns do not match sigma");
  }
  BlockResultRecord record;
  record.block_index = static_cast<std::uint32_t>(block_index);
  record.rows = static_cast<std::uint32_t>(svd.u.rows());
  record.kept = static_cast<std::uint32_t>(svd.u.cols());
  record.payload.resize(svd.u.rows() * svd.u.cols());
  for (std::size_t r = 0; r < svd.u.rows(); ++r) {
    for (std::size_t j = 0; j < svd.u.cols(); ++j) {
      record.payload[r * record.kept + j] = svd.u(r, j) * svd.sigma[j];
    }
  }
  return record;
}

void write_block_record(const BlockResultRecord& record,
                        const std::filesystem::path& path) {
  const std::size_t expect =
      static_cast<std::size_t>(record.rows) * static_cast<std::size_t>(record.kept);
  if (record.payload.size() != expect) {
    throw std::invalid_argument("block record payload size mismatch");
  }
  std::string bytes;
  bytes.reserve(22 + 8 * record.payload.size());
  bytes.append(kMagic, 4);
  put_u16(bytes, kVersion);
  put_u32(bytes, record.block_index);
  put_u32(bytes, record.rows);
  put_u32(bytes, record.kept);
  const std::size_t payload_begin = bytes.size();
  for (double v : record.payload) put_f64(bytes, v);
  put_u32(bytes, crc32(bytes.data() + payload_begin, bytes.size() - payload_begin));

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

BlockResultRecord read_block_record(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());

  if (bytes.size() < 22) throw RecordError("block record truncated: " + path.string());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  if (std::memcmp(p, kMagic, 4) != 0) {
    throw RecordError("bad block record magic in " + path.string());
  }
  if (get_u16(p + 4) != kVersion) {
    throw RecordError("unsupported block record version in " + path.string());
  }
  BlockResultRecord record;
  record.block_index = get_u32(p + 6);
  record.rows = get_u32(p + 10);
  record.kept = get_u32(p + 14);
  const std::uint64_t count =
      static_cast<std::uint64_t>(record.rows) * static_cast<std::uint64_t>(record.kept);
  if (bytes.size() != 22 + 8 * count) {
    throw RecordError("block record payload truncated in " + path.string());
  }
  const unsigned char* payload = p + 18;
  const std::uint32_t stored = get_u32(payload + 8 * count);
  const std::uint32_t actual = crc32(payload, 8 * count);
  if (stored != actual) {
    throw RecordError("block record checksum mismatch in " + path.string());
  }
  record.payload.resize(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    record.payload[i] = get_f64(payload + 8 * i);
  }
  return record;
}

}  // namespace ranky
