#pragma once

// Replication engine for empirical size/power and the mean-sd and variance
// ratio diagnostics. Every replication draws its data from a seed derived
// from (master_seed, grid cell, replication index), so results do not depend
// on the thread count or on the order in which cells are visited.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sphericity/distributions.hpp"
#include "sphericity/rank_tests.hpp"

namespace sphericity {

/// Scenario settings that do not depend on the grid coordinates.
struct ScenarioTemplate {
  Scenario scenario = Scenario::I;
  double kappa = 0.8;
  double location = 0.0;  // constant added to every coordinate
};

struct ExperimentConfig {
  std::vector<ScenarioTemplate> scenarios;
  std::vector<int> n_list;
  std::vector<int> p_list;
  std::vector<double> v_list;
  int reps = 2000;
  double alpha = kDefaultAlpha;
  std::vector<Method> methods{Method::SR, Method::SK};
  std::uint64_t master_seed = 0;
  int threads = 0;  // 0: one per hardware thread
  bool keep_records = false;
};

/// Throws InvalidInput when a list is empty, reps < 1, alpha is outside
/// (0, 1), or any grid point is out of range (rank methods need n >= 4).
void validate(const ExperimentConfig& cfg);

struct MethodOutcome {
  Method method = Method::SR;
  double statistic = 0.0;
  std::optional<double> sigma0;
  std::optional<double> z;
  bool reject = false;  // z > z_alpha; always false for JOHN
};

struct ReplicationRecord {
  Scenario scenario = Scenario::I;
  int n = 0;
  int p = 0;
  double v = 0.0;
  int rep = 0;
  std::vector<MethodOutcome> outcomes;
};

/// One (scenario, n, p, v, method) row of the report.
struct CellSummary {
  Scenario scenario = Scenario::I;
  int n = 0;
  int p = 0;
  double v = 0.0;
  Method method = Method::SR;
  int reps = 0;
  int rejections = 0;
  std::optional<double> rejection_rate;  // absent for JOHN
  std::optional<double> mean_sd_ratio;   // absent when reps < 2 or sd = 0
  std::optional<double> variance_ratio;  // var(T) / sigma0^2; absent for JOHN
  double wall_seconds = 0.0;
};

struct CellFailure {
  Scenario scenario = Scenario::I;
  int n = 0;
  int p = 0;
  double v = 0.0;
  int rep = 0;
  std::string message;
};

struct McReport {
  std::vector<CellSummary> rows;
  std::vector<CellFailure> failures;
  std::vector<ReplicationRecord> records;  // filled when keep_records is set
  double alpha = kDefaultAlpha;
  std::uint64_t master_seed = 0;
  double wall_seconds = 0.0;

  bool complete() const noexcept { return failures.empty(); }
};

/// Runs every grid cell. A replication that throws aborts its cell, which is
/// reported in `failures` with no rows; other cells still run.
McReport run_experiment(const ExperimentConfig& cfg);

/// Sample mean over sample sd (divisor size - 1). Throws InvalidInput for
/// fewer than two values and DegenerateInput for constant input.
double mean_sd_ratio(std::span<const double> stats);

/// Sample variance (divisor size - 1) over sigma0_sq. Throws InvalidInput for
/// fewer than two values or sigma0_sq <= 0.
double variance_ratio(std::span<const double> stats, double sigma0_sq);

/// Stream identifier of a grid cell; part of the per-replication seed.
std::uint64_t cell_stream(const ScenarioTemplate& scenario, int n, int p, double v) noexcept;

}  // namespace sphericity
