#include "plateau/symfunc.hpp"

#include "plateau/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace plateau {

namespace {

void check_order(int k, int lo, int n) {
  if (k < lo || k > n) {
    throw DomainError("symmetric polynomial order k=" + std::to_string(k) +
                      " outside [" + std::to_string(lo) + ", " +
                      std::to_string(n) + "]");
  }
}

void check_index(int i, int n) {
  if (i < 0 || i >= n) {
    throw DomainError("curvature index " + std::to_string(i) +
                      " outside [0, " + std::to_string(n) + ")");
  }
}

// e_0..e_k of x, truncated at degree k.
double esym_truncated(const Eigen::VectorXd& x, int k) {
  if (k == 0) return 1.0;
  Eigen::VectorXd e = Eigen::VectorXd::Zero(k + 1);
  e[0] = 1.0;
  for (Eigen::Index m = 0; m < x.size(); ++m) {
    const int top = std::min<int>(k, static_cast<int>(m) + 1);
    for (int j = top; j >= 1; --j) e[j] += x[m] * e[j - 1];
  }
  return e[k];
}

}  // namespace

CurvatureSpectrum::CurvatureSpectrum(Eigen::VectorXd values)
    : values_(std::move(values)) {
  if (values_.size() < 1) {
    throw DomainError("curvature spectrum must have at least one entry");
  }
  if (!values_.allFinite()) {
    throw DomainError("curvature spectrum has non-finite entries");
  }
}

CurvatureSpectrum::CurvatureSpectrum(std::initializer_list<double> values)
    : CurvatureSpectrum(Eigen::Map<const Eigen::VectorXd>(
          values.begin(), static_cast<Eigen::Index>(values.size()))) {}

CurvatureSpectrum CurvatureSpectrum::sorted_descending() const {
  Eigen::VectorXd v = values_;
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return CurvatureSpectrum(std::move(v));
}

bool CurvatureSpectrum::is_sorted_descending() const noexcept {
  for (Eigen::Index i = 1; i < values_.size(); ++i) {
    if (values_[i] > values_[i - 1]) return false;
  }
  return true;
}

CurvatureSpectrum CurvatureSpectrum::without(int i) const {
  check_index(i, size());
  if (size() == 1) {
    throw DomainError("cannot remove the only entry of a spectrum");
  }
  Eigen::VectorXd v(size() - 1);
  for (int a = 0, b = 0; a < size(); ++a) {
    if (a != i) v[b++] = values_[a];
  }
  return CurvatureSpectrum(std::move(v));
}

CurvatureSpectrum CurvatureSpectrum::without(int i, int j) const {
  check_index(i, size());
  check_index(j, size());
  if (i == j) throw DomainError("without(i, j) needs distinct indices");
  if (size() <= 2) {
    throw DomainError("removing two entries would leave an empty spectrum");
  }
  Eigen::VectorXd v(size() - 2);
  for (int a = 0, b = 0; a < size(); ++a) {
    if (a != i && a != j) v[b++] = values_[a];
  }
  return CurvatureSpectrum(std::move(v));
}

Eigen::VectorXd elementary_symmetric_all(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n + 1);
  e[0] = 1.0;
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index j = m + 1; j >= 1; --j) e[j] += x[m] * e[j - 1];
  }
  return e;
}

double elementary_symmetric(int k, const CurvatureSpectrum& kappa) {
  check_order(k, 0, kappa.size());
  if (k == kappa.size()) return kappa.values().prod();
  return esym_truncated(kappa.values(), k);
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return std::round(r);
}

double normalized_hk(int k, const CurvatureSpectrum& kappa) {
  check_order(k, 1, kappa.size());
  return elementary_symmetric(k, kappa) / binomial(kappa.size(), k);
}

double partial_sk(int k, const CurvatureSpectrum& kappa, int i) {
  const int n = kappa.size();
  check_order(k, 1, n);
  check_index(i, n);
  if (k == 1) return 1.0;
  if (k == 2) return kappa.values().sum() - kappa[i];
  return elementary_symmetric(k - 1, kappa.without(i));
}

double second_partial_sk(int k, const CurvatureSpectrum& kappa, int i, int j) {
  const int n = kappa.size();
  check_order(k, 2, n);
  check_index(i, n);
  check_index(j, n);
  if (i == j) return 0.0;
  if (k == 2) return 1.0;
  return elementary_symmetric(k - 2, kappa.without(i, j));
}

ConeLabel in_garding_cone(int k, const CurvatureSpectrum& kappa) {
  check_order(k, 1, kappa.size());
  const Eigen::VectorXd e = elementary_symmetric_all(kappa.values());
  ConeLabel label;
  label.k = k;
  label.slacks.assign(e.data() + 1, e.data() + 1 + k);
  label.member = std::all_of(label.slacks.begin(), label.slacks.end(),
                             [](double s) { return s > 0.0; });
  return label;
}

}  // namespace plateau
