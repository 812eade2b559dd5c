// Command-line front end: synthetic matrix generation, the distributed
// block-SVD pipeline, and the evaluation sweep against the dense oracle.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ranky/dense_matrix.hpp"
#include "ranky/matrix_market.hpp"
#include "ranky/metrics.hpp"
#include "ranky/pipeline.hpp"
#include "ranky/repair.hpp"
#include "ranky/synth.hpp"

namespace {

std::string shortest_repr(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

struct SynthOptions {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double density = 0.0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_synth(const SynthOptions& opt) {
  const ranky::SparseMatrix a =
      ranky::synth_bipartite(opt.rows, opt.cols, opt.density, opt.seed);
  ranky::save_matrix_market(a, opt.out);
  std::cout << "wrote " << opt.out << " (" << a.rows() << "x" << a.cols()
            << ", nnz " << a.nnz() << ")\n";
  return 0;
}

struct SvdOptions {
  std::string in;
  std::size_t blocks = 1;
  std::string method = "neighbor-random";
  std::size_t keep = 0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string sigma_out = "sigma.txt";
  std::string u_out = "left_vectors.rec";
  std::string repair_log = "repair.log";
};

int cmd_svd(const SvdOptions& opt) {
  const ranky::SparseMatrix a = ranky::load_matrix_market(opt.in);
  const ranky::RepairMethod method = ranky::repair_method_from_string(opt.method);
  const ranky::PipelineResult res =
      ranky::run_pipeline(a, opt.blocks, method, opt.keep, opt.seed, opt.workers);

  std::ofstream sigma_file(opt.sigma_out);
  if (!sigma_file) throw std::runtime_error("cannot write " + opt.sigma_out);
  for (double s : res.svd.sigma) sigma_file << shortest_repr(s) << '\n';

  // final U travels in the same container as worker payloads, unscaled
  ranky::BlockResultRecord u_record;
  u_record.block_index = 0;
  u_record.rows = static_cast<std::uint32_t>(res.svd.u.rows());
  u_record.kept = static_cast<std::uint32_t>(res.svd.u.cols());
  u_record.payload = res.svd.u.values();
  ranky::write_block_record(u_record, opt.u_out);

  std::ofstream log_file(opt.repair_log);
  if (!log_file) throw std::runtime_error("cannot write " + opt.repair_log);
  log_file << res.report.to_log();

  std::cout << "wrote " << opt.sigma_out << " (" << res.svd.sigma.size()
            << " singular values), " << opt.u_out << ", " << opt.repair_log << " ("
            << res.report.added_edges.size() << " edges added)\n";
  return 0;
}

struct EvaluateOptions {
  std::string in;
  std::size_t synth_rows = 0;
  std::size_t synth_cols = 0;
  double synth_density = 0.0;
  std::vector<std::size_t> blocks;
  std::string method = "neighbor-random";
  std::size_t keep = 0;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string out;
};

int cmd_evaluate(const EvaluateOptions& opt) {
  ranky::SparseMatrix a;
  if (!opt.in.empty()) {
    a = ranky::load_matrix_market(opt.in);
  } else {
    a = ranky::synth_bipartite(opt.synth_rows, opt.synth_cols, opt.synth_density,
                               opt.seed);
  }
  if (a.rows() * a.cols() > ranky::kDensifyCap) {
    throw std::runtime_error(
        "input is too large for the dense oracle; generate a desk-scale instance "
        "with `ranky synth` instead");
  }
  const ranky::RepairMethod method = ranky::repair_method_from_string(opt.method);

  std::ostringstream csv;
  csv << ranky::eval_csv_header() << '\n';
  for (std::size_t d : opt.blocks) {
    const ranky::PipelineResult res =
        ranky::run_pipeline(a, d, method, opt.keep, opt.seed, opt.workers);
    const ranky::SvdResult oracle = ranky::dense_svd(ranky::dense_of(res.repaired));

    // all retained columns are compared; with --keep below full rank the
    // oracle factors are truncated to the pipeline's width
    const std::size_t k = res.svd.u.cols();
    ranky::DenseMatrix u_ref(oracle.u.rows(), k);
    for (std::size_t r = 0; r < oracle.u.rows(); ++r)
      for (std::size_t c = 0; c < k; ++c) u_ref(r, c) = oracle.u(r, c);
    const std::span<const double> sigma_ref(oracle.sigma.data(),
                                            std::min(oracle.sigma.size(), k));

    ranky::EvalRow row;
    row.block_count = d;
    row.rows = a.rows();
    row.block_width = res.partition.range(0).width();
    row.method = method;
    row.seed = opt.seed;
    row.e_sigma = ranky::sigma_error(res.svd.sigma, oracle.sigma);
    row.e_u = ranky::left_vector_error(res.svd.u, u_ref, sigma_ref);
    csv << ranky::to_csv(row) << '\n';
  }

  if (opt.out.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out_file(opt.out);
    if (!out_file) throw std::runtime_error("cannot write " + opt.out);
    out_file << csv.str();
    std::cout << "wrote " << opt.out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed block SVD with rank repair for sparse matrices"};
  app.require_subcommand(1);

  SynthOptions synth;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "Generate a random bipartite matrix");
  synth_cmd->add_option("--rows", synth.rows, "row count")->required();
  synth_cmd->add_option("--cols", synth.cols, "column count")->required();
  synth_cmd->add_option("--density", synth.density, "edge probability in (0, 1]")
      ->required()
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));
  synth_cmd->add_option("--seed", synth.seed, "generator seed")->required();
  synth_cmd->add_option("--out", synth.out, "Matrix Market output path")->required();

  SvdOptions svd;
  CLI::App* svd_cmd = app.add_subcommand(
      "svd", "Singular values and left vectors via block decomposition");
  svd_cmd->add_option("--in", svd.in, "Matrix Market input")->required();
  svd_cmd->add_option("--blocks", svd.blocks, "number of column blocks")
      ->required()
      ->check(CLI::PositiveNumber);
  svd_cmd->add_option("--method", svd.method,
                      "rank repair method: random|neighbor|neighbor-random|none");
  svd_cmd->add_option("--keep", svd.keep, "kept components per block (0 = full)");
  svd_cmd->add_option("--seed", svd.seed, "repair seed")->required();
  svd_cmd->add_option("--workers", svd.workers, "worker pool size")
      ->check(CLI::PositiveNumber);
  svd_cmd->add_option("--sigma-out", svd.sigma_out, "singular values (text)");
  svd_cmd->add_option("--u-out", svd.u_out, "left vectors (block record format)");
  svd_cmd->add_option("--repair-log", svd.repair_log, "added-edge log");

  EvaluateOptions eval;
  CLI::App* eval_cmd = app.add_subcommand(
      "evaluate", "Sweep block counts and report errors vs the dense oracle");
  auto* eval_in = eval_cmd->add_option("--in", eval.in, "Matrix Market input");
  auto* eval_rows = eval_cmd->add_option("--synth-rows", eval.synth_rows,
                                         "rows of a generated instance");
  eval_cmd->add_option("--synth-cols", eval.synth_cols, "columns of a generated instance");
  eval_cmd
      ->add_option("--synth-density", eval.synth_density,
                   "density of a generated instance")
      ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));
  eval_in->excludes(eval_rows);
  eval_cmd->add_option("--blocks", eval.blocks, "block counts to sweep")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--method", eval.method,
                       "rank repair method: random|neighbor|neighbor-random|none");
  eval_cmd->add_option("--keep", eval.keep, "kept components per block (0 = full)");
  eval_cmd->add_option("--seed", eval.seed, "repair / generator seed")->required();
  eval_cmd->add_option("--workers", eval.workers, "worker pool size")
      ->check(CLI::PositiveNumber);
  eval_cmd->add_option("--out", eval.out, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (synth_cmd->parsed()) return cmd_synth(synth);
    if (svd_cmd->parsed()) return cmd_svd(svd);
    if (eval_cmd->parsed()) {
      if (eval.in.empty() && eval.synth_rows == 0) {
        std::cerr << "evaluate: provide --in or --synth-rows/--synth-cols/"
                     "--synth-density\n";
        return 2;
      }
      return cmd_evaluate(eval);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
