#pragma once

#include <cstdint>
#include <fstream>
#include <random>
#include <string>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "sphericity/io.hpp"
#include "sphericity/sign_core.hpp"

namespace sphericity::testing {

inline RowMatrix gaussian_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  RowMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

/// Haar-ish random orthogonal matrix from the QR factor of a Gaussian matrix.
inline Eigen::MatrixXd random_orthogonal(int p, std::uint64_t seed) {
  const Eigen::MatrixXd g = gaussian_matrix(p, p, seed);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  return qr.householderQ() * Eigen::MatrixXd::Identity(p, p);
}

inline std::string data_path(const std::string& name) { return std::string(SPHERICITY_TEST_DATA_DIR) + "/" + name; }

inline SampleMatrix load_fixture(const std::string& stem) {
  std::ifstream in(data_path(stem + ".csv"));
  return SampleMatrix(read_matrix_csv(in, false));
}

inline nlohmann::json load_expected(const std::string& stem) {
  std::ifstream in(data_path(stem + ".expected.json"));
  return nlohmann::json::parse(in);
}

inline double relative_error(double actual, double expected) {
  return std::abs(actual - expected) / std::max(std::abs(expected), 1e-300);
}

}  // namespace sphericity::testing
