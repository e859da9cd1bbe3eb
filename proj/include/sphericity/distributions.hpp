#pragma once

// Simulation scenarios. Each observation is X_i = A Y_i + location, where
// A = diag(sqrt(2) for the first floor(v p) coordinates, 1 elsewhere) and Y_i
// is drawn from one of:
//   I    standard normal N(0, I_p)
//   II   multivariate t with 4 degrees of freedom
//   III  normal scale mixture kappa N(0, I_p) + (1 - kappa) N(0, 9 I_p)
//   IV   iid standardized Gamma(shape 4, rate 0.5) coordinates
//   V    iid standardized t_4 coordinates

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sphericity/rank_tests.hpp"
#include "sphericity/sign_core.hpp"

namespace sphericity {

enum class Scenario { I = 1, II, III, IV, V };

std::string_view to_string(Scenario s) noexcept;
/// Roman numerals I..V, case-insensitive; throws InvalidInput otherwise.
Scenario parse_scenario(std::string_view name);

struct ScenarioSpec {
  Scenario scenario = Scenario::I;
  int n = 0;
  int p = 0;
  double v = 0.0;
  std::vector<double> location;  // empty means the origin; otherwise size p
  double kappa = 0.8;
  std::uint64_t seed = 0;
};

/// Throws InvalidInput on n < 1, p < 1, v outside [0, 1], kappa outside
/// (0, 1) or a location of the wrong size.
void validate(const ScenarioSpec& spec);

/// Deterministic in spec (including seed).
SampleMatrix sample(const ScenarioSpec& spec);

/// floor(v p), guarding against products such as 0.29 * 100 landing just
/// below an integer.
int spiked_count(int p, double v);

/// Diagonal of A.
Eigen::VectorXd scale_matrix(int p, double v);

/// Traces of Lambda = p A^2 / tr(A^2) in closed form.
ShapeSpec shape_from_v(int p, double v);

/// SplitMix64-based mixing of (master, stream, index) into a 64-bit seed;
/// gives every replication its own stream independent of execution order.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept;

}  // namespace sphericity
