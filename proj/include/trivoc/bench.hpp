#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "trivoc/synthetic.hpp"
#include "trivoc/types.hpp"

namespace trivoc {

enum class Solver { kTriVoC, kRansac };

std::string solver_name(Solver s);

struct TrialRecord {
  int n = 0;
  double outlier_ratio = 0.0;
  double sigma = 0.01;
  std::uint64_t seed = 0;
  int trial = 0;
  Solver solver = Solver::kTriVoC;
  double rot_err_deg = 0.0;
  double trans_err_m = 0.0;
  double runtime_s = 0.0;
  int consensus_size = 0;
  double recall = 0.0;
  double precision = 0.0;
  long long triads_evaluated = 0;
  long long pure_inlier_triads = 0;
  bool success = false;
};

struct SweepConfig {
  std::vector<int> ns;
  std::vector<double> ratios;
  int trials_per_cell = 50;
  std::vector<Solver> solvers = {Solver::kTriVoC, Solver::kRansac};
  std::uint64_t master_seed = 1;
  double sigma = 0.01;
  double threshold_multiplier = 6.0;
  double confidence = 0.99;
  long long trivoc_iteration_cap = 1'000'000;
  long long ransac_max_iterations = 10000;
  double success_rot_deg = 5.0;   // success thresholds (configurable; an
  double success_trans_m = 0.05;  // order of magnitude above noise floor)
  std::string source_cloud = "box";
  int threads = 1;
};

// Instance seed for one (n, ratio, trial) cell entry, derived from the
// master seed and the cell coordinates themselves so any record can be
// reproduced in isolation.
std::uint64_t instance_seed(std::uint64_t master, int n, double ratio,
                            int trial);

// One record per (n, ratio, trial, solver), in that nesting order. Both
// solvers see the identical instance of a trial. Solver failures become
// records with success=false and infinite errors; the sweep never aborts.
// `threads` > 1 distributes trials across workers; the output order and
// content are independent of the thread count.
std::vector<TrialRecord> run_sweep(const SweepConfig& config);

// Re-runs a single (n, ratio, trial) cell entry of the sweep in isolation.
std::vector<TrialRecord> run_cell_trial(const SweepConfig& config, int n,
                                        double ratio, int trial);

struct InstrumentationResult {
  long long trivoc_triads = 0;
  long long trivoc_pure = 0;
  long long ransac_triads = 0;
  long long ransac_pure = 0;
};

// Runs both solvers on one instance with ground truth supplied and reports
// how many 3-point sets each evaluated and how many of those were
// pure-inlier.
InstrumentationResult instrumentation_study(const SyntheticScenario& s,
                                            const SweepConfig& config);

// Five-number summaries per (n, ratio, solver) cell.
struct CellSummary {
  int n = 0;
  double outlier_ratio = 0.0;
  Solver solver = Solver::kTriVoC;
  int trials = 0;
  double success_rate = 0.0;
  std::array<double, 5> rot_err_deg{};   // min, q1, median, q3, max
  std::array<double, 5> trans_err_m{};
  std::array<double, 5> runtime_s{};
};

// Linear-interpolation quantile (the common "type 7" rule): for sorted x of
// size m, q(p) = x[h] interpolated at h = (m-1)p. quantile({1..5}, .5) = 3,
// .25 -> 2, .75 -> 4.
double quantile(std::vector<double> values, double p);

std::vector<CellSummary> aggregate(const std::vector<TrialRecord>& records);

inline constexpr const char* kCsvHeader =
    "n,outlier_ratio,sigma,seed,trial,solver,rot_err_deg,trans_err_m,"
    "runtime_s,consensus_size,recall,precision,triads_evaluated,"
    "pure_inlier_triads,success";

void write_csv(const std::vector<TrialRecord>& records, std::ostream& os);

std::string summary_to_json(const std::vector<CellSummary>& cells);

}  // namespace trivoc
