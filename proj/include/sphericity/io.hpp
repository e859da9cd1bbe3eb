#pragma once

#include <istream>
#include <string>
#include <vector>

#include "sphericity/errors.hpp"
#include "sphericity/montecarlo.hpp"
#include "sphericity/sign_core.hpp"

namespace sphericity {

/// Comma-separated numeric matrix, one observation per line. Blank lines are
/// skipped; every data line must have the same number of fields. Parsing is
/// locale-independent. Errors (InvalidInput) name the 1-based line number.
RowMatrix read_matrix_csv(std::istream& in, bool has_header);

/// Raised for a config document with unknown or mistyped keys.
class ConfigError : public InvalidInput {
 public:
  ConfigError(const std::string& what, std::vector<std::string> keys)
      : InvalidInput(what), keys_(std::move(keys)) {}
  const std::vector<std::string>& keys() const noexcept { return keys_; }

 private:
  std::vector<std::string> keys_;
};

/// Experiment config as JSON, with keys named after ExperimentConfig fields:
///
///   { "scenarios": ["I", {"scenario": "III", "kappa": 0.8}],
///     "n_list": [20, 30], "p_list": [100], "v_list": [0, 0.15, 0.3],
///     "reps": 2000, "alpha": 0.05, "methods": ["SR", "SK"],
///     "master_seed": 42, "threads": "auto" }
///
/// Missing optional keys keep their defaults; the four grid lists are
/// required. All offending keys are collected into one ConfigError.
ExperimentConfig parse_experiment_config(std::istream& in);

}  // namespace sphericity
