#include "sphericity/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "sphericity/errors.hpp"
#include "sphericity/summation.hpp"

namespace sphericity {

void validate(const ExperimentConfig& cfg) {
  if (cfg.scenarios.empty()) throw InvalidInput("experiment: scenarios must not be empty");
  if (cfg.n_list.empty()) throw InvalidInput("experiment: n_list must not be empty");
  if (cfg.p_list.empty()) throw InvalidInput("experiment: p_list must not be empty");
  if (cfg.v_list.empty()) throw InvalidInput("experiment: v_list must not be empty");
  if (cfg.methods.empty()) throw InvalidInput("experiment: methods must not be empty");
  if (cfg.reps < 1) throw InvalidInput("experiment: reps must be >= 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw InvalidInput("experiment: alpha must lie in (0, 1)");
  if (cfg.threads < 0) throw InvalidInput("experiment: threads must be >= 0");
  const bool rank = std::any_of(cfg.methods.begin(), cfg.methods.end(),
                                [](Method m) { return m != Method::John; });
  for (int n : cfg.n_list) {
    if (n < 2) throw InvalidInput("experiment: every n must be >= 2");
    if (rank && n < 4) throw InvalidInput("experiment: rank methods require n >= 4");
  }
  for (int p : cfg.p_list)
    if (p < 1) throw InvalidInput("experiment: every p must be >= 1");
  for (double v : cfg.v_list)
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("experiment: every v must lie in [0, 1]");
  for (const auto& s : cfg.scenarios) {
    if (!(s.kappa > 0.0 && s.kappa < 1.0)) throw InvalidInput("experiment: kappa must lie in (0, 1)");
    if (!std::isfinite(s.location)) throw InvalidInput("experiment: location must be finite");
  }
}

std::uint64_t cell_stream(const ScenarioTemplate& scenario, int n, int p, double v) noexcept {
  const std::uint64_t coords = derive_seed(static_cast<std::uint64_t>(scenario.scenario),
                                           static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(p));
  return derive_seed(coords, std::bit_cast<std::uint64_t>(v),
                     std::bit_cast<std::uint64_t>(scenario.kappa) ^
                         std::rotl(std::bit_cast<std::uint64_t>(scenario.location), 17));
}

namespace {

struct SampleMoments {
  double mean = 0.0;
  double variance = 0.0;
};

SampleMoments moments(std::span<const double> xs) {
  CompensatedSum sum;
  for (double x : xs) sum += x;
  const double mean = sum.value() / static_cast<double>(xs.size());
  CompensatedSum sq;
  for (double x : xs) sq += (x - mean) * (x - mean);
  return {mean, sq.value() / static_cast<double>(xs.size() - 1)};
}

std::vector<MethodOutcome> run_methods(const SampleMatrix& x, const std::vector<Method>& methods,
                                       double alpha) {
  std::vector<MethodOutcome> out;
  out.reserve(methods.size());
  std::optional<RankTestPair> rank;
  for (Method m : methods) {
    TestResult r;
    if (m == Method::John) {
      r = john_statistic(x);
    } else {
      if (!rank) rank = rank_tests(x, alpha);
      r = m == Method::SR ? rank->spearman : rank->kendall;
    }
    out.push_back({m, r.statistic, r.sigma0, r.z, r.reject.value_or(false)});
  }
  return out;
}

struct CellRun {
  std::vector<ReplicationRecord> records;
  std::optional<CellFailure> failure;
};

CellRun run_cell(const ExperimentConfig& cfg, const ScenarioTemplate& tmpl, int n, int p, double v,
                 unsigned threads) {
  const std::uint64_t stream = cell_stream(tmpl, n, p, v);
  std::vector<ReplicationRecord> records(cfg.reps);
  std::atomic<int> next{0};
  std::mutex failure_mutex;
  std::optional<CellFailure> failure;

  auto worker = [&] {
    for (int r = next.fetch_add(1); r < cfg.reps; r = next.fetch_add(1)) {
      try {
        ScenarioSpec spec;
        spec.scenario = tmpl.scenario;
        spec.n = n;
        spec.p = p;
        spec.v = v;
        spec.kappa = tmpl.kappa;
        if (tmpl.location != 0.0) spec.location.assign(p, tmpl.location);
        spec.seed = derive_seed(cfg.master_seed, stream, static_cast<std::uint64_t>(r));
        const SampleMatrix x = sample(spec);
        records[r] = {tmpl.scenario, n, p, v, r, run_methods(x, cfg.methods, cfg.alpha)};
      } catch (const std::exception& e) {
        std::lock_guard lock(failure_mutex);
        // Keep the lowest failing index so the diagnostic is reproducible.
        if (!failure || r < failure->rep) failure = CellFailure{tmpl.scenario, n, p, v, r, e.what()};
        next.store(cfg.reps);
      }
    }
  };

  const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(cfg.reps));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  return {std::move(records), std::move(failure)};
}

CellSummary summarize(const std::vector<ReplicationRecord>& records, std::size_t slot, int n, int p) {
  const ReplicationRecord& first = records.front();
  const MethodOutcome& head = first.outcomes[slot];
  CellSummary s;
  s.scenario = first.scenario;
  s.n = n;
  s.p = p;
  s.v = first.v;
  s.method = head.method;
  s.reps = static_cast<int>(records.size());

  std::vector<double> stats;
  stats.reserve(records.size());
  for (const auto& rec : records) {
    stats.push_back(rec.outcomes[slot].statistic);
    if (rec.outcomes[slot].reject) ++s.rejections;
  }

  if (head.method != Method::John) s.rejection_rate = static_cast<double>(s.rejections) / s.reps;
  if (stats.size() >= 2) {
    const SampleMoments m = moments(stats);
    if (m.variance > 0.0) s.mean_sd_ratio = m.mean / std::sqrt(m.variance);
    if (head.method != Method::John) {
      const double s0 = sigma0(n, p);
      if (s0 > 0.0) s.variance_ratio = m.variance / (s0 * s0);
    }
  }
  return s;
}

}  // namespace

McReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  unsigned threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
  threads = std::max(threads, 1u);

  McReport report;
  report.alpha = cfg.alpha;
  report.master_seed = cfg.master_seed;

  for (const auto& tmpl : cfg.scenarios)
    for (int n : cfg.n_list)
      for (int p : cfg.p_list)
        for (double v : cfg.v_list) {
          const auto cell_start = Clock::now();
          CellRun run;
          try {
            run = run_cell(cfg, tmpl, n, p, v, threads);
          } catch (const std::exception& e) {
            // e.g. allocation failure while setting up the cell
            run.failure = CellFailure{tmpl.scenario, n, p, v, -1, e.what()};
          }
          if (run.failure) {
            report.failures.push_back(*run.failure);
            continue;
          }
          const double elapsed = std::chrono::duration<double>(Clock::now() - cell_start).count();
          for (std::size_t slot = 0; slot < cfg.methods.size(); ++slot) {
            CellSummary s = summarize(run.records, slot, n, p);
            s.wall_seconds = elapsed;
            report.rows.push_back(s);
          }
          if (cfg.keep_records) {
            report.records.insert(report.records.end(), std::make_move_iterator(run.records.begin()),
                                  std::make_move_iterator(run.records.end()));
          }
        }

  report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

double mean_sd_ratio(std::span<const double> stats) {
  if (stats.size() < 2) throw InvalidInput("mean_sd_ratio: need at least two values");
  const SampleMoments m = moments(stats);
  if (!(m.variance > 0.0)) throw DegenerateInput("mean_sd_ratio: statistics have zero variance");
  return m.mean / std::sqrt(m.variance);
}

double variance_ratio(std::span<const double> stats, double sigma0_sq) {
  if (stats.size() < 2) throw InvalidInput("variance_ratio: need at least two values");
  if (!(sigma0_sq > 0.0)) throw InvalidInput("variance_ratio: sigma0^2 must be positive");
  return moments(stats).variance / sigma0_sq;
}

}  // namespace sphericity
