#include "sphericity/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <random>

#include "sphericity/errors.hpp"

namespace sphericity {

std::string_view to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::I:
      return "I";
    case Scenario::II:
      return "II";
    case Scenario::III:
      return "III";
    case Scenario::IV:
      return "IV";
    case Scenario::V:
      return "V";
  }
  return "?";
}

Scenario parse_scenario(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (Scenario s : {Scenario::I, Scenario::II, Scenario::III, Scenario::IV, Scenario::V}) {
    if (upper == to_string(s)) return s;
  }
  throw InvalidInput("unknown scenario '" + std::string(name) + "' (expected I, II, III, IV or V)");
}

void validate(const ScenarioSpec& spec) {
  if (spec.n < 1) throw InvalidInput("scenario: n must be >= 1");
  if (spec.p < 1) throw InvalidInput("scenario: p must be >= 1");
  if (!(spec.v >= 0.0 && spec.v <= 1.0)) throw InvalidInput("scenario: v must lie in [0, 1]");
  if (!(spec.kappa > 0.0 && spec.kappa < 1.0)) throw InvalidInput("scenario: kappa must lie in (0, 1)");
  if (!spec.location.empty() && static_cast<int>(spec.location.size()) != spec.p)
    throw InvalidInput("scenario: location must have p entries");
  for (double c : spec.location)
    if (!std::isfinite(c)) throw InvalidInput("scenario: location must be finite");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t index) noexcept {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(master) ^ stream) ^ index);
}

int spiked_count(int p, double v) {
  const double product = v * p;
  return std::min(p, static_cast<int>(std::floor(product + 1e-9 * std::max(1.0, product))));
}

Eigen::VectorXd scale_matrix(int p, double v) {
  Eigen::VectorXd diag = Eigen::VectorXd::Ones(p);
  diag.head(spiked_count(p, v)).setConstant(std::numbers::sqrt2);
  return diag;
}

ShapeSpec shape_from_v(int p, double v) {
  const double dp = p;
  const double m = spiked_count(p, v);
  const double total = dp + m;  // tr(A^2)
  ShapeSpec s;
  s.p = p;
  s.tr_D2 = m * (dp - m) * dp / (total * total);
  s.tr_L2 = dp * dp * (dp + 3.0 * m) / (total * total);
  s.tr_L4 = dp * dp * dp * dp * (dp + 15.0 * m) / (total * total * total * total);
  return s;
}

SampleMatrix sample(const ScenarioSpec& spec) {
  validate(spec);
  const int n = spec.n;
  const int p = spec.p;
  std::mt19937_64 rng(derive_seed(spec.seed, 0, 0));
  std::normal_distribution<double> normal(0.0, 1.0);

  auto chi_square4 = [&] {
    double w = 0.0;
    for (int d = 0; d < 4; ++d) {
      const double z = normal(rng);
      w += z * z;
    }
    return w;
  };

  RowMatrix y(n, p);
  switch (spec.scenario) {
    case Scenario::I:
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < p; ++c) y(i, c) = normal(rng);
      break;
    case Scenario::II:
      for (int i = 0; i < n; ++i) {
        for (int c = 0; c < p; ++c) y(i, c) = normal(rng);
        y.row(i) /= std::sqrt(chi_square4() / 4.0);
      }
      break;
    case Scenario::III: {
      std::bernoulli_distribution narrow(spec.kappa);
      for (int i = 0; i < n; ++i) {
        const double scale = narrow(rng) ? 1.0 : 3.0;
        for (int c = 0; c < p; ++c) y(i, c) = scale * normal(rng);
      }
      break;
    }
    case Scenario::IV: {
      // shape 4, rate 0.5: mean 8, variance 16
      std::gamma_distribution<double> gamma(4.0, 2.0);
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < p; ++c) y(i, c) = (gamma(rng) - 8.0) / 4.0;
      break;
    }
    case Scenario::V:
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < p; ++c) {
          const double t = normal(rng) / std::sqrt(chi_square4() / 4.0);
          y(i, c) = t / std::numbers::sqrt2;
        }
      break;
  }

  const Eigen::VectorXd a = scale_matrix(p, spec.v);
  y *= a.asDiagonal();
  if (!spec.location.empty()) {
    y.rowwise() += Eigen::Map<const Eigen::RowVectorXd>(spec.location.data(), p);
  }
  return SampleMatrix(std::move(y));
}

}  // namespace sphericity
