#pragma once

// Spatial-sign primitives: pairwise signs U_ij = U(X_i - X_j), their Gram
// matrix, and the sign/rank scatter matrices built from them.

#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace sphericity {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Difference vectors with Euclidean norm below this are treated as ties.
inline constexpr double kTieNormThreshold = 1e-300;

/// An n x p data matrix whose rows are observations. All entries are finite
/// and p >= 1; the lower bound on n is enforced by each consumer.
class SampleMatrix {
 public:
  /// Throws InvalidInput on non-finite entries, zero columns or zero rows.
  explicit SampleMatrix(RowMatrix data);

  int n() const noexcept { return static_cast<int>(data_.rows()); }
  int p() const noexcept { return static_cast<int>(data_.cols()); }
  const RowMatrix& data() const noexcept { return data_; }
  auto row(int i) const { return data_.row(i); }

 private:
  RowMatrix data_;
};

/// x / ||x||, or the zero vector when x is zero (or its norm is below
/// kTieNormThreshold). Throws InvalidInput on non-finite input.
Eigen::VectorXd spatial_sign(const Eigen::Ref<const Eigen::VectorXd>& x);

/// The signs U_ij for every unordered pair. Only i < j is stored; (j, i) is
/// served as the exact negation.
class PairwiseSignSet {
 public:
  int n() const noexcept { return n_; }
  int p() const noexcept { return static_cast<int>(signs_.cols()); }
  int tie_count() const noexcept { return tie_count_; }

  /// Row of the stored matrix for the pair {i, j}, i < j.
  static std::ptrdiff_t unordered_index(int i, int j, int n) noexcept {
    return static_cast<std::ptrdiff_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
  }

  /// U_ij for any i, j in [0, n). U_ii is the zero vector.
  Eigen::VectorXd sign(int i, int j) const;

  /// (n(n-1)/2) x p matrix of U_ij, i < j, in lexicographic pair order.
  const RowMatrix& unordered_signs() const noexcept { return signs_; }

 private:
  friend PairwiseSignSet pairwise_signs(const SampleMatrix& x);
  PairwiseSignSet(int n, RowMatrix signs, int tie_count)
      : n_(n), signs_(std::move(signs)), tie_count_(tie_count) {}

  int n_;
  RowMatrix signs_;
  int tie_count_;
};

/// Throws InsufficientSample when n < 2.
PairwiseSignSet pairwise_signs(const SampleMatrix& x);

/// Inner products U_ij^T U_kl over all m = n(n-1) ordered pairs i != j.
/// Ordered pair (i, j) maps to row i*(n-1) + j - [j > i].
class SignGram {
 public:
  int n() const noexcept { return n_; }
  std::ptrdiff_t size() const noexcept { return gram_.rows(); }

  std::ptrdiff_t pair_index(int i, int j) const noexcept {
    return static_cast<std::ptrdiff_t>(i) * (n_ - 1) + j - (j > i ? 1 : 0);
  }

  /// U_ij^T U_kl; requires i != j and k != l.
  double operator()(int i, int j, int k, int l) const noexcept {
    return gram_(pair_index(i, j), pair_index(k, l));
  }

  const RowMatrix& matrix() const noexcept { return gram_; }
  int tie_count() const noexcept { return tie_count_; }

 private:
  friend SignGram sign_gram(const PairwiseSignSet& signs);
  SignGram(int n, RowMatrix gram, int tie_count)
      : n_(n), gram_(std::move(gram)), tie_count_(tie_count) {}

  int n_;
  RowMatrix gram_;
  int tie_count_;
};

SignGram sign_gram(const PairwiseSignSet& signs);

/// Sample spatial-rank covariance (1/n) sum_i R_i R_i^T with
/// R_i = (1/n) sum_j U_ij.
Eigen::MatrixXd rank_cov(const SampleMatrix& x);
Eigen::MatrixXd rank_cov(const PairwiseSignSet& signs);

/// Kendall's tau scatter 2/(n(n-1)) sum_{i<j} U_ij U_ij^T.
Eigen::MatrixXd kendall_cov(const SampleMatrix& x);
Eigen::MatrixXd kendall_cov(const PairwiseSignSet& signs);

/// Gamma(((p+1)/2))^2 / (Gamma(p/2) Gamma((p+2)/2)), evaluated in log space.
/// Tends to 1 as p grows, which is what drives the null constant of the
/// spatial-rank covariance trace to 1/2. Throws InvalidInput for p < 1.
double tau_f_ratio(long long p);

}  // namespace sphericity
