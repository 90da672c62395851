#include "trivoc/bench.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "trivoc/correspondence_io.hpp"
#include "trivoc/geometry.hpp"
#include "trivoc/ransac.hpp"
#include "trivoc/rng.hpp"
#include "trivoc/trivoc.hpp"

namespace trivoc {

namespace {

constexpr std::uint64_t kRansacStreamTag = 0x52414e53414321ull;

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

TrialRecord evaluate(const SweepConfig& config, const SyntheticInstance& inst,
                     int n, double ratio, int trial, std::uint64_t seed,
                     Solver solver) {
  TrialRecord rec;
  rec.n = n;
  rec.outlier_ratio = ratio;
  rec.sigma = config.sigma;
  rec.seed = seed;
  rec.trial = trial;
  rec.solver = solver;

  RegistrationResult result;
  const auto start = std::chrono::steady_clock::now();
  if (solver == Solver::kTriVoC) {
    TriVoCConfig tc;
    tc.noise.sigma = config.sigma;
    tc.noise.threshold_multiplier = config.threshold_multiplier;
    tc.confidence = config.confidence;
    tc.max_iteration_cap = config.trivoc_iteration_cap;
    result = trivoc_register(inst.corr, tc, &inst.inliers);
  } else {
    RansacConfig rc;
    rc.gamma = config.threshold_multiplier * config.sigma;
    rc.confidence = config.confidence;
    rc.max_iterations = config.ransac_max_iterations;
    rc.rng_seed = derive_seed(seed, {kRansacStreamTag});
    result = ransac_register(inst.corr, rc, &inst.inliers);
  }
  rec.runtime_s = elapsed_seconds(start);

  rec.consensus_size = result.consensus.size();
  rec.triads_evaluated = result.stats.triads_evaluated;
  rec.pure_inlier_triads = result.stats.pure_inlier_triads.value_or(0);

  long long hits = 0;
  {
    std::vector<std::uint8_t> is_inlier(n + 1, 0);
    for (int label : inst.inliers) is_inlier[label] = 1;
    for (int label : result.consensus.indices) hits += is_inlier[label];
  }
  rec.recall = inst.inliers.empty()
                   ? 0.0
                   : static_cast<double>(hits) / inst.inliers.size();
  rec.precision = result.consensus.indices.empty()
                      ? 0.0
                      : static_cast<double>(hits) /
                            result.consensus.indices.size();

  if (result.success) {
    rec.rot_err_deg = rotation_error_deg(result.transform.rotation,
                                         inst.ground_truth.rotation);
    rec.trans_err_m = translation_error_m(result.transform.translation,
                                          inst.ground_truth.translation);
  } else {
    rec.rot_err_deg = std::numeric_limits<double>::infinity();
    rec.trans_err_m = std::numeric_limits<double>::infinity();
  }
  rec.success = result.success && rec.rot_err_deg < config.success_rot_deg &&
                rec.trans_err_m < config.success_trans_m;
  return rec;
}

}  // namespace

std::string solver_name(Solver s) {
  return s == Solver::kTriVoC ? "trivoc" : "ransac";
}

std::uint64_t instance_seed(std::uint64_t master, int n, double ratio,
                            int trial) {
  return derive_seed(master, {static_cast<std::uint64_t>(n),
                              std::bit_cast<std::uint64_t>(ratio),
                              static_cast<std::uint64_t>(trial)});
}

std::vector<TrialRecord> run_cell_trial(const SweepConfig& config, int n,
                                        double ratio, int trial) {
  const std::uint64_t seed = instance_seed(config.master_seed, n, ratio, trial);
  SyntheticScenario scenario;
  scenario.n = n;
  scenario.outlier_ratio = ratio;
  scenario.sigma = config.sigma;
  scenario.seed = seed;
  scenario.source_cloud = config.source_cloud;
  const SyntheticInstance inst = generate_instance(scenario);

  std::vector<TrialRecord> records;
  records.reserve(config.solvers.size());
  for (Solver solver : config.solvers) {
    records.push_back(evaluate(config, inst, n, ratio, trial, seed, solver));
  }
  return records;
}

std::vector<TrialRecord> run_sweep(const SweepConfig& config) {
  struct Task {
    int n;
    double ratio;
    int trial;
    std::size_t slot;  // first record index for this (cell, trial)
  };
  std::vector<Task> tasks;
  const std::size_t per_trial = config.solvers.size();
  std::size_t slot = 0;
  for (int n : config.ns) {
    for (double ratio : config.ratios) {
      for (int trial = 0; trial < config.trials_per_cell; ++trial) {
        tasks.push_back({n, ratio, trial, slot});
        slot += per_trial;
      }
    }
  }

  std::vector<TrialRecord> records(slot);
  auto worker_body = [&](std::atomic<std::size_t>& cursor) {
    for (;;) {
      const std::size_t t = cursor.fetch_add(1);
      if (t >= tasks.size()) break;
      const Task& task = tasks[t];
      const std::vector<TrialRecord> result =
          run_cell_trial(config, task.n, task.ratio, task.trial);
      std::copy(result.begin(), result.end(), records.begin() + task.slot);
    }
  };

  if (config.threads <= 1) {
    std::atomic<std::size_t> cursor{0};
    worker_body(cursor);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(config.threads);
    for (int t = 0; t < config.threads; ++t) {
      pool.emplace_back([&] { worker_body(cursor); });
    }
    for (auto& th : pool) th.join();
  }
  return records;
}

InstrumentationResult instrumentation_study(const SyntheticScenario& s,
                                            const SweepConfig& config) {
  const SyntheticInstance inst = generate_instance(s);

  TriVoCConfig tc;
  tc.noise.sigma = s.sigma;
  tc.noise.threshold_multiplier = config.threshold_multiplier;
  tc.confidence = config.confidence;
  tc.max_iteration_cap = config.trivoc_iteration_cap;
  const RegistrationResult tv = trivoc_register(inst.corr, tc, &inst.inliers);

  RansacConfig rc;
  rc.gamma = config.threshold_multiplier * s.sigma;
  rc.confidence = config.confidence;
  rc.max_iterations = config.ransac_max_iterations;
  rc.rng_seed = derive_seed(s.seed, {kRansacStreamTag});
  const RegistrationResult ra = ransac_register(inst.corr, rc, &inst.inliers);

  InstrumentationResult out;
  out.trivoc_triads = tv.stats.triads_evaluated;
  out.trivoc_pure = tv.stats.pure_inlier_triads.value_or(0);
  out.ransac_triads = ra.stats.triads_evaluated;
  out.ransac_pure = ra.stats.pure_inlier_triads.value_or(0);
  return out;
}

double quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size();
  const double h = static_cast<double>(m - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(h));
  if (lo == hi || values[lo] == values[hi]) return values[lo];
  return values[lo] + (h - lo) * (values[hi] - values[lo]);
}

std::vector<CellSummary> aggregate(const std::vector<TrialRecord>& records) {
  // Group by (n, ratio, solver), preserving first-appearance order.
  std::vector<CellSummary> cells;
  std::map<std::tuple<int, double, int>, std::size_t> index;
  std::vector<std::vector<const TrialRecord*>> groups;

  for (const TrialRecord& rec : records) {
    const auto key =
        std::make_tuple(rec.n, rec.outlier_ratio, static_cast<int>(rec.solver));
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, cells.size());
      CellSummary cell;
      cell.n = rec.n;
      cell.outlier_ratio = rec.outlier_ratio;
      cell.solver = rec.solver;
      cells.push_back(cell);
      groups.emplace_back();
      it = index.find(key);
    }
    groups[it->second].push_back(&rec);
  }

  constexpr double kProbs[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (std::size_t g = 0; g < groups.size(); ++g) {
    CellSummary& cell = cells[g];
    cell.trials = static_cast<int>(groups[g].size());
    std::vector<double> rot, trans, runtime;
    int successes = 0;
    for (const TrialRecord* rec : groups[g]) {
      rot.push_back(rec->rot_err_deg);
      trans.push_back(rec->trans_err_m);
      runtime.push_back(rec->runtime_s);
      successes += rec->success;
    }
    cell.success_rate = static_cast<double>(successes) / cell.trials;
    for (int q = 0; q < 5; ++q) {
      cell.rot_err_deg[q] = quantile(rot, kProbs[q]);
      cell.trans_err_m[q] = quantile(trans, kProbs[q]);
      cell.runtime_s[q] = quantile(runtime, kProbs[q]);
    }
  }
  return cells;
}

void write_csv(const std::vector<TrialRecord>& records, std::ostream& os) {
  os << kCsvHeader << '\n';
  for (const TrialRecord& r : records) {
    os << r.n << ',' << format_double(r.outlier_ratio) << ','
       << format_double(r.sigma) << ',' << r.seed << ',' << r.trial << ','
       << solver_name(r.solver) << ',' << format_double(r.rot_err_deg) << ','
       << format_double(r.trans_err_m) << ',' << format_double(r.runtime_s)
       << ',' << r.consensus_size << ',' << format_double(r.recall) << ','
       << format_double(r.precision) << ',' << r.triads_evaluated << ','
       << r.pure_inlier_triads << ',' << (r.success ? 1 : 0) << '\n';
  }
}

std::string summary_to_json(const std::vector<CellSummary>& cells) {
  auto five = [](const std::array<double, 5>& v) {
    nlohmann::ordered_json j;
    j["min"] = v[0];
    j["q1"] = v[1];
    j["median"] = v[2];
    j["q3"] = v[3];
    j["max"] = v[4];
    return j;
  };
  nlohmann::ordered_json root;
  root["cells"] = nlohmann::ordered_json::array();
  for (const CellSummary& cell : cells) {
    nlohmann::ordered_json j;
    j["n"] = cell.n;
    j["outlier_ratio"] = cell.outlier_ratio;
    j["solver"] = solver_name(cell.solver);
    j["trials"] = cell.trials;
    j["success_rate"] = cell.success_rate;
    j["rot_err_deg"] = five(cell.rot_err_deg);
    j["trans_err_m"] = five(cell.trans_err_m);
    j["runtime_s"] = five(cell.runtime_s);
    root["cells"].push_back(j);
  }
  return root.dump(2) + "\n";
}

}  // namespace trivoc
