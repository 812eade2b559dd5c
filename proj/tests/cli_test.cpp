#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "ranky/block_record.hpp"
#include "ranky/matrix_market.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / "ranky_cli_test";
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(RANKY_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), {});
}

}  // namespace

TEST_CASE("synth writes a deterministic matrix market file") {
  TempDir dir;
  const std::string out1 = (dir.path / "a.mtx").string();
  const std::string out2 = (dir.path / "b.mtx").string();
  const std::string args = "synth --rows 64 --cols 512 --density 0.05 --seed 7 --out ";
  REQUIRE(run(args + out1) == 0);
  REQUIRE(run(args + out2) == 0);
  CHECK(slurp(out1) == slurp(out2));
  ranky::SparseMatrix a = ranky::load_matrix_market(out1);
  CHECK(a.rows() == 64);
  CHECK(a.cols() == 512);

  CHECK(run("synth --rows 4 --cols 4 --density 0 --seed 1 --out " +
            (dir.path / "c.mtx").string()) == 2);
  CHECK(run("synth --rows 4 --cols 4 --density 2.0 --seed 1 --out " +
            (dir.path / "c.mtx").string()) == 2);
}

TEST_CASE("svd writes sigma, left vectors and the repair log") {
  TempDir dir;
  const std::string mtx = (dir.path / "a.mtx").string();
  REQUIRE(run("synth --rows 16 --cols 256 --density 0.02 --seed 7 --out " + mtx) == 0);

  const std::string sigma = (dir.path / "sigma.txt").string();
  const std::string uout = (dir.path / "u.rec").string();
  const std::string log = (dir.path / "repair.log").string();
  REQUIRE(run("svd --in " + mtx + " --blocks 8 --method neighbor-random --seed 7" +
              " --sigma-out " + sigma + " --u-out " + uout + " --repair-log " + log) == 0);

  std::ifstream sf(sigma);
  std::size_t count = 0;
  double prev = 1e300;
  for (std::string line; std::getline(sf, line);) {
    const double v = std::stod(line);
    CHECK(v >= 0.0);
    CHECK(v <= prev);
    prev = v;
    ++count;
  }
  CHECK(count == 16);

  ranky::BlockResultRecord u = ranky::read_block_record(uout);
  CHECK(u.rows == 16);
  CHECK(u.kept == 16);

  const std::string log_text = slurp(log);
  CHECK(log_text.find("# lonely=") != std::string::npos);

  CHECK(run("svd --in " + mtx + " --blocks 0 --seed 1") == 2);
  CHECK(run("svd --in " + (dir.path / "missing.mtx").string() + " --blocks 2 --seed 1") == 1);
  CHECK(run("svd --in " + mtx + " --blocks 2") == 2);  // --seed is mandatory
}

TEST_CASE("svd with method none completes on matrices with lonely rows") {
  TempDir dir;
  const std::string mtx = (dir.path / "a.mtx").string();
  REQUIRE(run("synth --rows 8 --cols 128 --density 0.02 --seed 3 --out " + mtx) == 0);
  const std::string sigma = (dir.path / "s.txt").string();
  CHECK(run("svd --in " + mtx + " --blocks 8 --method none --seed 3 --sigma-out " +
            sigma + " --u-out " + (dir.path / "u.rec").string() + " --repair-log " +
            (dir.path / "r.log").string()) == 0);
  CHECK(fs::exists(sigma));
}

TEST_CASE("synth desk-scale command reproduces the pinned edge count") {
  TempDir dir;
  const std::string mtx = (dir.path / "a.mtx").string();
  REQUIRE(run("synth --rows 64 --cols 8192 --density 0.002 --seed 7 --out " + mtx) == 0);
  CHECK(ranky::load_matrix_market(mtx).nnz() == 1025);
}

TEST_CASE("evaluate on dense input with no repair stays at oracle precision") {
  TempDir dir;
  const std::string csv = (dir.path / "dense.csv").string();
  REQUIRE(run("evaluate --synth-rows 8 --synth-cols 64 --synth-density 1.0 "
              "--blocks 1,2,4 --method none --seed 0 --out " + csv) == 0);
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++rows;
    const auto last_comma = line.rfind(',');
    const auto prev_comma = line.rfind(',', last_comma - 1);
    const double e_sigma =
        std::stod(line.substr(prev_comma + 1, last_comma - prev_comma - 1));
    // sigma_max of the all-ones 8x64 matrix is sqrt(8*64)
    CHECK(e_sigma <= 1e-10 * std::sqrt(512.0));
  }
  CHECK(rows == 3);
}

TEST_CASE("evaluate with an empty sweep emits only the header") {
  TempDir dir;
  const std::string csv = (dir.path / "empty.csv").string();
  REQUIRE(run("evaluate --synth-rows 4 --synth-cols 16 --synth-density 0.5 "
              "--method random --seed 1 --out " + csv) == 0);
  CHECK(slurp(csv) == "D,M,Ni,method,seed,e_sigma,e_u\n");
}

TEST_CASE("evaluate emits one csv row per block count") {
  TempDir dir;
  const std::string csv = (dir.path / "eval.csv").string();
  REQUIRE(run("evaluate --synth-rows 16 --synth-cols 256 --synth-density 0.02 "
              "--blocks 2,4,8 --method random --seed 5 --out " + csv) == 0);
  std::ifstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == "D,M,Ni,method,seed,e_sigma,e_u");
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 3);

  // empty sweep is impossible (--blocks required); missing input is usage
  CHECK(run("evaluate --blocks 2 --seed 1") == 2);
}
