#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into plateau::core.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace oracle {

// S_k by enumerating all k-subsets (n <= ~12).
inline double esym_subsets(int k, const Eigen::VectorXd& x) {
  const int n = static_cast<int>(x.size());
  if (k == 0) return 1.0;
  double total = 0.0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    double p = 1.0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) p *= x[i];
    }
    total += p;
  }
  return total;
}

inline Eigen::VectorXd drop(const Eigen::VectorXd& x, int i) {
  Eigen::VectorXd out(x.size() - 1);
  for (int j = 0, m = 0; j < x.size(); ++j) {
    if (j != i) out[m++] = x[j];
  }
  return out;
}

// Hyperbolic principal curvatures of the graph of u from the generalized
// eigenproblem h v = kappa g v, g = (I + p p^T)/u^2,
// h = (I + p p^T + u D^2u)/(u^2 w). Returned descending.
inline Eigen::VectorXd hyperbolic_curvatures(double u, const Eigen::VectorXd& p,
                                             const Eigen::MatrixXd& d2u) {
  const int n = static_cast<int>(p.size());
  const double w = std::sqrt(1.0 + p.squaredNorm());
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd g = (I + p * p.transpose()) / (u * u);
  const Eigen::MatrixXd h = (I + p * p.transpose() + u * d2u) / (u * u * w);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(h, g);
  Eigen::VectorXd k = es.eigenvalues();
  std::sort(k.data(), k.data() + n, std::greater<double>());
  return k;
}

// Euclidean principal curvatures w.r.t. the upward normal: generalized
// eigenvalues of D^2u / w against I + p p^T. Returned descending.
inline Eigen::VectorXd euclidean_curvatures(const Eigen::VectorXd& p, const Eigen::MatrixXd& d2u) {
  const int n = static_cast<int>(p.size());
  const double w = std::sqrt(1.0 + p.squaredNorm());
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(d2u / w, I + p * p.transpose());
  Eigen::VectorXd k = es.eigenvalues();
  std::sort(k.data(), k.data() + n, std::greater<double>());
  return k;
}

// S_2 of the eigenvalues of a symmetric matrix, via an eigen-solve.
inline double s2_of_eigs(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  const Eigen::VectorXd l = es.eigenvalues();
  return 0.5 * (l.sum() * l.sum() - l.squaredNorm());
}

// Minimum of 3|t|^2 - 2 t_i^2 - gamma (1.t)^2 over unit t orthogonal to df,
// by an eigen-solve of the form restricted to an orthonormal basis of
// df^perp.
inline double qform_min_restricted(const Eigen::VectorXd& df, int i, double gamma) {
  const int n = static_cast<int>(df.size());
  Eigen::MatrixXd Q = 3.0 * Eigen::MatrixXd::Identity(n, n);
  Q(i, i) -= 2.0;
  Q -= gamma * Eigen::MatrixXd::Ones(n, n);
  // Orthonormal basis of df^perp: last n-1 columns of a full QR of df.
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(df);
  const Eigen::MatrixXd B = Eigen::MatrixXd(qr.householderQ()).rightCols(n - 1);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B.transpose() * Q * B);
  return es.eigenvalues().minCoeff();
}

inline Eigen::VectorXd gaussian(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

inline Eigen::MatrixXd random_symmetric(std::mt19937_64& rng, int n, double scale = 1.0) {
  Eigen::MatrixXd a(n, n);
  std::normal_distribution<double> g(0.0, scale);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = g(rng);
  }
  return a;
}

// Independent K_2 membership: S_1 > 0 and S_1^2 > |x|^2.
inline bool in_k2(const Eigen::VectorXd& x) {
  const double s1 = x.sum();
  return s1 > 0.0 && 0.5 * (s1 * s1 - x.squaredNorm()) > 0.0;
}

// Rejection sample of K_2 with a mixture of scales.
inline Eigen::VectorXd random_k2(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> shift(-0.5, 2.0);
  for (;;) {
    Eigen::VectorXd v = gaussian(rng, n);
    v.array() += shift(rng);
    if (in_k2(v)) return v;
  }
}

}  // namespace oracle
