#include "sphericity/sign_core.hpp"

#include <cmath>
#include <vector>

#include "sphericity/errors.hpp"

namespace sphericity {

SampleMatrix::SampleMatrix(RowMatrix data) : data_(std::move(data)) {
  if (data_.rows() < 1) throw InvalidInput("sample matrix has no observations");
  if (data_.cols() < 1) throw InvalidInput("sample matrix has no variables (p must be >= 1)");
  if (!data_.allFinite()) throw InvalidInput("sample matrix contains NaN or Inf");
}

Eigen::VectorXd spatial_sign(const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (!x.allFinite()) throw InvalidInput("spatial_sign: non-finite input");
  const double norm = x.norm();
  if (!(norm >= kTieNormThreshold)) return Eigen::VectorXd::Zero(x.size());
  return x / norm;
}

Eigen::VectorXd PairwiseSignSet::sign(int i, int j) const {
  if (i == j) return Eigen::VectorXd::Zero(p());
  if (i < j) return signs_.row(unordered_index(i, j, n_)).transpose();
  return -signs_.row(unordered_index(j, i, n_)).transpose();
}

PairwiseSignSet pairwise_signs(const SampleMatrix& x) {
  const int n = x.n();
  if (n < 2) throw InsufficientSample("pairwise_signs", 2, n);
  const int p = x.p();
  RowMatrix signs(static_cast<Eigen::Index>(n) * (n - 1) / 2, p);
  int ties = 0;
  Eigen::Index r = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++r) {
      auto out = signs.row(r);
      out = x.row(i) - x.row(j);
      const double norm = out.norm();
      if (norm >= kTieNormThreshold) {
        out /= norm;
      } else {
        out.setZero();
        ++ties;
      }
    }
  }
  return PairwiseSignSet(n, std::move(signs), ties);
}

SignGram sign_gram(const PairwiseSignSet& signs) {
  const int n = signs.n();
  const RowMatrix& s = signs.unordered_signs();
  const Eigen::Index pairs = s.rows();

  // One symmetric product over unordered pairs; ordered entries are obtained
  // by sign flips, so antisymmetry and symmetry hold exactly.
  Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(pairs, pairs);
  lower.selfadjointView<Eigen::Lower>().rankUpdate(s);

  const Eigen::Index m = static_cast<Eigen::Index>(n) * (n - 1);
  RowMatrix gram(m, m);
  std::vector<Eigen::Index> unordered(m);
  std::vector<double> orient(m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Eigen::Index row = static_cast<Eigen::Index>(i) * (n - 1) + j - (j > i ? 1 : 0);
      unordered[row] = i < j ? PairwiseSignSet::unordered_index(i, j, n)
                             : PairwiseSignSet::unordered_index(j, i, n);
      orient[row] = i < j ? 1.0 : -1.0;
    }
  }
  for (Eigen::Index a = 0; a < m; ++a) {
    const Eigen::Index ua = unordered[a];
    for (Eigen::Index b = 0; b < m; ++b) {
      const Eigen::Index ub = unordered[b];
      const double g = ua >= ub ? lower(ua, ub) : lower(ub, ua);
      gram(a, b) = orient[a] * orient[b] * g;
    }
  }
  return SignGram(n, std::move(gram), signs.tie_count());
}

Eigen::MatrixXd rank_cov(const PairwiseSignSet& signs) {
  const int n = signs.n();
  const RowMatrix& s = signs.unordered_signs();
  RowMatrix ranks = RowMatrix::Zero(n, signs.p());
  Eigen::Index r = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++r) {
      ranks.row(i) += s.row(r);
      ranks.row(j) -= s.row(r);
    }
  }
  ranks /= static_cast<double>(n);
  return ranks.transpose() * ranks / static_cast<double>(n);
}

Eigen::MatrixXd rank_cov(const SampleMatrix& x) { return rank_cov(pairwise_signs(x)); }

Eigen::MatrixXd kendall_cov(const PairwiseSignSet& signs) {
  const double n = signs.n();
  const RowMatrix& s = signs.unordered_signs();
  Eigen::MatrixXd xi = Eigen::MatrixXd::Zero(s.cols(), s.cols());
  xi.selfadjointView<Eigen::Lower>().rankUpdate(s.transpose(), 2.0 / (n * (n - 1.0)));
  Eigen::MatrixXd full = xi.selfadjointView<Eigen::Lower>();
  return full;
}

Eigen::MatrixXd kendall_cov(const SampleMatrix& x) { return kendall_cov(pairwise_signs(x)); }

double tau_f_ratio(long long p) {
  if (p < 1) throw InvalidInput("tau_f_ratio: p must be >= 1");
  const double dp = static_cast<double>(p);
  const double log_ratio =
      2.0 * std::lgamma((dp + 1.0) / 2.0) - std::lgamma(dp / 2.0) - std::lgamma((dp + 2.0) / 2.0);
  return std::exp(log_ratio);
}

}  // namespace sphericity
