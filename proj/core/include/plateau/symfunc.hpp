#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace plateau {

/// Ordered vector of principal curvatures (kappa_1, ..., kappa_n).
///
/// Entries are always finite. Ordering is whatever the producer chose;
/// `sorted_descending()` returns the canonical kappa_1 >= ... >= kappa_n form
/// that the sharp bounds expect.
class CurvatureSpectrum {
 public:
  explicit CurvatureSpectrum(Eigen::VectorXd values);
  CurvatureSpectrum(std::initializer_list<double> values);

  int size() const noexcept { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }
  const Eigen::VectorXd& values() const noexcept { return values_; }

  CurvatureSpectrum sorted_descending() const;
  bool is_sorted_descending() const noexcept;
  /// Spectrum with entry i removed, i.e. (kappa | i).
  CurvatureSpectrum without(int i) const;
  /// Spectrum with entries i and j removed, i.e. (kappa | ij).
  CurvatureSpectrum without(int i, int j) const;

 private:
  Eigen::VectorXd values_;
};

struct ConeLabel {
  int k = 0;
  bool member = false;
  /// S_1(kappa), ..., S_k(kappa).
  std::vector<double> slacks;
};

/// Unnormalized S_k(kappa), with S_0 = 1. Computed with the prefix-polynomial
/// recurrence e_j <- e_j + x * e_{j-1}; O(n k).
double elementary_symmetric(int k, const CurvatureSpectrum& kappa);

/// All of S_0, ..., S_n in one pass.
Eigen::VectorXd elementary_symmetric_all(const Eigen::VectorXd& x);

/// H_k = S_k / C(n, k).
double normalized_hk(int k, const CurvatureSpectrum& kappa);

/// dS_k/dkappa_i = S_{k-1}(kappa | i). Index i is zero-based.
double partial_sk(int k, const CurvatureSpectrum& kappa, int i);

/// d^2 S_k / dkappa_i dkappa_j = S_{k-2}(kappa | ij) for i != j, 0 for i == j.
double second_partial_sk(int k, const CurvatureSpectrum& kappa, int i, int j);

/// Membership in the open Garding cone K_k. Strict `> 0`, no tolerance.
ConeLabel in_garding_cone(int k, const CurvatureSpectrum& kappa);

double binomial(int n, int k);

// Short forms used all over the S_2 code.
inline double s1(const Eigen::VectorXd& x) { return x.sum(); }
inline double s2(const Eigen::VectorXd& x) {
  double e1 = 0.0, e2 = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    e2 += x[i] * e1;
    e1 += x[i];
  }
  return e2;
}

}  // namespace plateau
