#include "ranky/matrix_market.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ranky/errors.hpp"

namespace ranky {

namespace {

constexpr const char* kBanner = "%%MatrixMarket matrix coordinate real general";

bool parse_index(const std::string& token, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

bool parse_value(const std::string& token, double& out) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size();
}

std::string shortest_repr(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

SparseMatrix load_matrix_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());

  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw ParseError("missing Matrix Market header", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kBanner) {
    throw ParseError("unsupported Matrix Market header '" + line + "'", line_no);
  }

  // comments, then the dimensions line
  std::size_t rows = 0, cols = 0, nnz = 0;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("missing dimensions line", line_no + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line[0] == '%') continue;
    std::istringstream dims(line);
    std::string a, b, c, extra;
    if (!(dims >> a >> b >> c) || (dims >> extra) ||
        !parse_index(a, rows) || !parse_index(b, cols) || !parse_index(c, nnz)) {
      throw ParseError("malformed dimensions line '" + line + "'", line_no);
    }
    break;
  }

  std::vector<Entry> entries;
  entries.reserve(nnz);
  std::vector<std::size_t> entry_lines;
  entry_lines.reserve(nnz);
  while (entries.size() < nnz) {
    if (!std::getline(in, line)) {
      throw ParseError("expected " + std::to_string(nnz) + " entries, got " +
                           std::to_string(entries.size()),
                       line_no);
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string a, b, c, extra;
    std::size_t row = 0, col = 0;
    double value = 0.0;
    if (!(fields >> a >> b >> c) || (fields >> extra) ||
        !parse_index(a, row) || !parse_index(b, col) || !parse_value(c, value)) {
      throw ParseError("malformed entry '" + line + "'", line_no);
    }
    if (row == 0 || col == 0 || row > rows || col > cols) {
      throw ParseError("entry (" + a + ", " + b + ") outside " + std::to_string(rows) +
                           "x" + std::to_string(cols),
                       line_no);
    }
    entries.push_back({row - 1, col - 1, value});
    entry_lines.push_back(line_no);
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) {
      throw ParseError("unexpected content after " + std::to_string(nnz) + " entries",
                       line_no);
    }
  }

  // find duplicates before handing off, so the error can name the line
  std::vector<std::size_t> order(entries.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const Entry& ea = entries[a];
    const Entry& eb = entries[b];
    return ea.row != eb.row ? ea.row < eb.row : ea.col < eb.col;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Entry& prev = entries[order[i - 1]];
    const Entry& cur = entries[order[i]];
    if (prev.row == cur.row && prev.col == cur.col) {
      throw ParseError("duplicate coordinate (" + std::to_string(cur.row + 1) + ", " +
                           std::to_string(cur.col + 1) + ")",
                       std::max(entry_lines[order[i - 1]], entry_lines[order[i]]));
    }
  }
  for (const Entry& e : entries) {
    if (e.value == 0.0) {
      throw ParseError("explicit zero at (" + std::to_string(e.row + 1) + ", " +
                           std::to_string(e.col + 1) + ")",
                       entry_lines[&e - entries.data()]);
    }
  }

  return SparseMatrix(rows, cols, std::move(entries));
}

void save_matrix_market(const SparseMatrix& a, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary: byte-stable newlines
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kBanner << '\n';
  out << a.rows() << ' ' << a.cols() << ' ' << a.nnz() << '\n';
  for (const Entry& e : a.entries()) {
    out << e.row + 1 << ' ' << e.col + 1 << ' ' << shortest_repr(e.value) << '\n';
  }
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace ranky
