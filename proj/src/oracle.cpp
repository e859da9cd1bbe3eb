#include "sphericity/oracle.hpp"

#include <cmath>
#include <vector>

#include "sphericity/errors.hpp"

namespace sphericity::oracle {
namespace {

// U(X_a - X_b) written out longhand.
std::vector<double> sign_of_difference(const SampleMatrix& x, int a, int b) {
  const int p = x.p();
  std::vector<double> d(p);
  double sq = 0.0;
  for (int c = 0; c < p; ++c) {
    d[c] = x.data()(a, c) - x.data()(b, c);
    sq += d[c] * d[c];
  }
  const double norm = std::sqrt(sq);
  for (double& v : d) v = norm > 0.0 ? v / norm : 0.0;
  return d;
}

double dot(const std::vector<double>& u, const std::vector<double>& v) {
  long double s = 0.0L;
  for (std::size_t c = 0; c < u.size(); ++c) s += static_cast<long double>(u[c]) * v[c];
  return static_cast<double>(s);
}

template <class Summand>
long double sum_distinct_quadruples(int n, Summand&& summand) {
  long double total = 0.0L;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (i == j || i == k || i == l || j == k || j == l || k == l) continue;
          total += summand(i, j, k, l);
        }
  return total;
}

long double quadruples(int n) {
  return static_cast<long double>(n) * (n - 1) * (n - 2) * (n - 3);
}

}  // namespace

double brute_force_tr_omega_sq(const SampleMatrix& x) {
  const int n = x.n();
  if (n < 4) throw InsufficientSample("brute_force_tr_omega_sq", 4, n);
  const long double total = sum_distinct_quadruples(n, [&](int i, int j, int k, int l) {
    const auto u_ij = sign_of_difference(x, i, j);
    const auto u_kl = sign_of_difference(x, k, l);
    const auto u_kj = sign_of_difference(x, k, j);
    const auto u_il = sign_of_difference(x, i, l);
    return static_cast<long double>(dot(u_ij, u_kl)) * dot(u_kj, u_il);
  });
  return static_cast<double>(total / (2.0L * quadruples(n)));
}

double brute_force_tr_xi_sq(const SampleMatrix& x) {
  const int n = x.n();
  if (n < 4) throw InsufficientSample("brute_force_tr_xi_sq", 4, n);
  const long double total = sum_distinct_quadruples(n, [&](int i, int j, int k, int l) {
    const long double g = dot(sign_of_difference(x, i, j), sign_of_difference(x, k, l));
    return g * g;
  });
  return static_cast<double>(total / quadruples(n));
}

}  // namespace sphericity::oracle
