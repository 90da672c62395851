#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "trivoc/bench.hpp"
#include "trivoc/correspondence_io.hpp"
#include "trivoc/errors.hpp"
#include "trivoc/oracle.hpp"
#include "trivoc/ransac.hpp"
#include "trivoc/synthetic.hpp"
#include "trivoc/trivoc.hpp"

namespace {

using nlohmann::ordered_json;

ordered_json matrix_json(const Eigen::Matrix3d& m) {
  ordered_json rows = ordered_json::array();
  for (int r = 0; r < 3; ++r) {
    rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
  }
  return rows;
}

ordered_json vector_json(const Eigen::Vector3d& v) {
  return {v.x(), v.y(), v.z()};
}

ordered_json result_json(const std::string& solver,
                         const trivoc::RegistrationResult& result,
                         double runtime_s) {
  ordered_json j;
  j["solver"] = solver;
  j["success"] = result.success;
  j["rotation"] = matrix_json(result.transform.rotation);
  j["translation"] = vector_json(result.transform.translation);
  j["consensus"]["size"] = result.consensus.size();
  j["consensus"]["indices"] = result.consensus.indices;
  j["runtime_s"] = runtime_s;

  ordered_json stats;
  stats["triads_evaluated"] = result.stats.triads_evaluated;
  if (result.stats.pure_inlier_triads.has_value()) {
    stats["pure_inlier_triads"] = *result.stats.pure_inlier_triads;
  }
  stats["layer_iterations"] = result.stats.layer_iterations;
  ordered_json history = ordered_json::array();
  for (const auto& [ordinal, size] : result.stats.consensus_history) {
    history.push_back({ordinal, size});
  }
  stats["consensus_history"] = history;
  stats["refreshed_consensus_size"] = result.stats.refreshed_consensus_size;
  j["stats"] = stats;
  return j;
}

void emit(const ordered_json& j, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream os(out_path);
    if (!os) throw trivoc::Error("cannot write output file: " + out_path);
    os << j.dump(2) << "\n";
  }
}

int default_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct RegisterArgs {
  std::string correspondences;
  double sigma = 0.01;
  double gamma_multiplier = 6.0;
  std::string solver = "trivoc";
  std::uint64_t seed = 0;
  int threads = default_threads();
  std::string out;
};

int run_register(const RegisterArgs& args) {
  const trivoc::CorrespondenceSet corr =
      trivoc::load_correspondences(args.correspondences);

  trivoc::RegistrationResult result;
  double runtime_s = 0.0;
  const auto start = std::chrono::steady_clock::now();
  if (args.solver == "trivoc") {
    trivoc::TriVoCConfig config;
    config.noise.sigma = args.sigma;
    config.noise.threshold_multiplier = args.gamma_multiplier;
    config.threads = args.threads;
    result = trivoc::trivoc_register(corr, config);
  } else {
    trivoc::RansacConfig config;
    config.gamma = args.gamma_multiplier * args.sigma;
    config.rng_seed = args.seed;
    result = trivoc::ransac_register(corr, config);
  }
  runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            start)
                  .count();

  emit(result_json(args.solver, result, runtime_s), args.out);
  return result.success ? 0 : 2;
}

struct BenchArgs {
  std::string grid;
  int trials = 50;
  std::string out;
  std::string summary;
  std::string solvers = "trivoc,ransac";
  std::uint64_t master_seed = 1;
  double sigma = 0.01;
  double gamma_multiplier = 6.0;
  std::string cloud = "box";
  int threads = default_threads();
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find(sep, start);
    if (end == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

// Grid spec: "n=100,500,1000;ratio=0.2,0.5,0.9".
void parse_grid(const std::string& spec, std::vector<int>* ns,
                std::vector<double>* ratios) {
  for (const std::string& clause : split(spec, ';')) {
    if (clause.empty()) continue;
    const std::size_t eq = clause.find('=');
    if (eq == std::string::npos) {
      throw trivoc::Error("bad grid clause '" + clause +
                          "' (expected key=v1,v2,...)");
    }
    const std::string key = clause.substr(0, eq);
    for (const std::string& value : split(clause.substr(eq + 1), ',')) {
      try {
        if (key == "n") {
          ns->push_back(std::stoi(value));
        } else if (key == "ratio") {
          ratios->push_back(std::stod(value));
        } else {
          throw trivoc::Error("unknown grid key '" + key + "'");
        }
      } catch (const std::logic_error&) {
        throw trivoc::Error("bad grid value '" + value + "' for key '" + key +
                            "'");
      }
    }
  }
  if (ns->empty() || ratios->empty()) {
    throw trivoc::Error("grid must define both n and ratio lists");
  }
}

int run_bench(const BenchArgs& args) {
  trivoc::SweepConfig config;
  parse_grid(args.grid, &config.ns, &config.ratios);
  config.trials_per_cell = args.trials;
  config.master_seed = args.master_seed;
  config.sigma = args.sigma;
  config.threshold_multiplier = args.gamma_multiplier;
  config.source_cloud = args.cloud;
  config.threads = args.threads;

  config.solvers.clear();
  for (const std::string& name : split(args.solvers, ',')) {
    if (name == "trivoc") {
      config.solvers.push_back(trivoc::Solver::kTriVoC);
    } else if (name == "ransac") {
      config.solvers.push_back(trivoc::Solver::kRansac);
    } else {
      throw trivoc::Error("unknown solver '" + name + "'");
    }
  }

  const std::vector<trivoc::TrialRecord> records = trivoc::run_sweep(config);

  if (args.out.empty() || args.out == "-") {
    trivoc::write_csv(records, std::cout);
  } else {
    std::ofstream os(args.out);
    if (!os) throw trivoc::Error("cannot write CSV file: " + args.out);
    trivoc::write_csv(records, os);
  }
  if (!args.summary.empty()) {
    std::ofstream os(args.summary);
    if (!os) throw trivoc::Error("cannot write summary file: " + args.summary);
    os << trivoc::summary_to_json(trivoc::aggregate(records));
  }
  return 0;
}

struct GenerateArgs {
  int n = 100;
  double ratio = 0.0;
  std::uint64_t seed = 0;
  std::string out_prefix;
  double sigma = 0.01;
  std::string cloud = "box";
};

int run_generate(const GenerateArgs& args) {
  trivoc::SyntheticScenario scenario;
  scenario.n = args.n;
  scenario.outlier_ratio = args.ratio;
  scenario.sigma = args.sigma;
  scenario.seed = args.seed;
  scenario.source_cloud = args.cloud;
  const trivoc::SyntheticInstance inst = trivoc::generate_instance(scenario);

  trivoc::save_correspondences(inst.corr, args.out_prefix + ".corr");
  trivoc::GroundTruthSidecar gt{inst.ground_truth, inst.inliers};
  trivoc::save_ground_truth(gt, args.out_prefix + ".gt.json");
  return 0;
}

struct OracleArgs {
  std::string correspondences;
  double sigma = 0.01;
  double gamma_multiplier = 6.0;
  std::string out;
};

int run_oracle(const OracleArgs& args) {
  const trivoc::CorrespondenceSet corr =
      trivoc::load_correspondences(args.correspondences);
  const double gamma = args.gamma_multiplier * args.sigma;

  const auto start = std::chrono::steady_clock::now();
  const auto [consensus, model] =
      trivoc::exhaustive_consensus_oracle(corr, gamma);
  const double runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  ordered_json j;
  j["solver"] = "oracle";
  j["success"] = consensus.size() >= 3;
  j["rotation"] = matrix_json(model.rotation);
  j["translation"] = vector_json(model.translation);
  j["consensus"]["size"] = consensus.size();
  j["consensus"]["indices"] = consensus.indices;
  j["runtime_s"] = runtime_s;
  emit(j, args.out);
  return consensus.size() >= 3 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Robust point-cloud registration from putative correspondences: "
      "triple-layered voting consensus maximization, a RANSAC baseline, a "
      "brute-force oracle, and a synthetic benchmark harness."};
  app.require_subcommand(1);

  RegisterArgs reg;
  CLI::App* reg_cmd =
      app.add_subcommand("register", "Estimate a rigid transform");
  reg_cmd
      ->add_option("--correspondences", reg.correspondences,
                   "six-column correspondence file")
      ->required()
      ->envname("TRIVOC_CORRESPONDENCES");
  reg_cmd->add_option("--sigma", reg.sigma, "noise standard deviation (m)")
      ->required()
      ->envname("TRIVOC_SIGMA");
  reg_cmd
      ->add_option("--gamma-multiplier", reg.gamma_multiplier,
                   "inlier threshold = multiplier * sigma")
      ->envname("TRIVOC_GAMMA_MULTIPLIER");
  reg_cmd->add_option("--solver", reg.solver, "trivoc or ransac")
      ->check(CLI::IsMember({"trivoc", "ransac"}))
      ->envname("TRIVOC_SOLVER");
  reg_cmd->add_option("--seed", reg.seed, "RNG seed (ransac only)")
      ->envname("TRIVOC_SEED");
  reg_cmd->add_option("--threads", reg.threads, "worker threads")
      ->envname("TRIVOC_THREADS");
  reg_cmd->add_option("--out", reg.out, "output JSON path (default stdout)")
      ->envname("TRIVOC_OUT");

  BenchArgs bench;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Monte-Carlo benchmark sweep");
  bench_cmd
      ->add_option("--grid", bench.grid,
                   "grid spec, e.g. n=100,500;ratio=0.2,0.8")
      ->required()
      ->envname("TRIVOC_GRID");
  bench_cmd->add_option("--trials", bench.trials, "trials per cell")
      ->envname("TRIVOC_TRIALS");
  bench_cmd->add_option("--out", bench.out, "CSV path (default stdout)")
      ->envname("TRIVOC_OUT");
  bench_cmd->add_option("--summary", bench.summary, "summary JSON path")
      ->envname("TRIVOC_SUMMARY");
  bench_cmd->add_option("--solvers", bench.solvers, "comma list")
      ->envname("TRIVOC_SOLVERS");
  bench_cmd->add_option("--master-seed", bench.master_seed, "master seed")
      ->envname("TRIVOC_MASTER_SEED");
  bench_cmd->add_option("--sigma", bench.sigma, "noise standard deviation")
      ->envname("TRIVOC_SIGMA");
  bench_cmd
      ->add_option("--gamma-multiplier", bench.gamma_multiplier,
                   "inlier threshold = multiplier * sigma")
      ->envname("TRIVOC_GAMMA_MULTIPLIER");
  bench_cmd->add_option("--cloud", bench.cloud, "box, sphere, or PLY path")
      ->envname("TRIVOC_CLOUD");
  bench_cmd->add_option("--threads", bench.threads, "worker threads")
      ->envname("TRIVOC_THREADS");

  GenerateArgs gen;
  CLI::App* gen_cmd =
      app.add_subcommand("generate", "Write a synthetic instance to disk");
  gen_cmd->add_option("--n", gen.n, "correspondence count")
      ->required()
      ->envname("TRIVOC_N");
  gen_cmd->add_option("--ratio", gen.ratio, "outlier ratio in [0, 0.99]")
      ->required()
      ->envname("TRIVOC_RATIO");
  gen_cmd->add_option("--seed", gen.seed, "RNG seed")->envname("TRIVOC_SEED");
  gen_cmd
      ->add_option("--out-prefix", gen.out_prefix,
                   "writes PREFIX.corr and PREFIX.gt.json")
      ->required()
      ->envname("TRIVOC_OUT_PREFIX");
  gen_cmd->add_option("--sigma", gen.sigma, "noise standard deviation")
      ->envname("TRIVOC_SIGMA");
  gen_cmd->add_option("--cloud", gen.cloud, "box, sphere, or PLY path")
      ->envname("TRIVOC_CLOUD");

  OracleArgs oracle;
  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Exhaustive consensus search (small instances)");
  oracle_cmd
      ->add_option("--correspondences", oracle.correspondences,
                   "six-column correspondence file")
      ->required()
      ->envname("TRIVOC_CORRESPONDENCES");
  oracle_cmd->add_option("--sigma", oracle.sigma, "noise standard deviation")
      ->required()
      ->envname("TRIVOC_SIGMA");
  oracle_cmd
      ->add_option("--gamma-multiplier", oracle.gamma_multiplier,
                   "inlier threshold = multiplier * sigma")
      ->envname("TRIVOC_GAMMA_MULTIPLIER");
  oracle_cmd->add_option("--out", oracle.out, "output JSON path")
      ->envname("TRIVOC_OUT");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (app.got_subcommand(reg_cmd)) return run_register(reg);
    if (app.got_subcommand(bench_cmd)) return run_bench(bench);
    if (app.got_subcommand(gen_cmd)) return run_generate(gen);
    if (app.got_subcommand(oracle_cmd)) return run_oracle(oracle);
  } catch (const trivoc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
