#include "plateau/inequality_lab.hpp"

#include "plateau/errors.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <string>

namespace plateau::lab {

namespace {

struct AlphaBeta {
  double alpha;
  double beta;
};

AlphaBeta alpha_beta(int n) {
  const double nn = n;
  const double s = std::sqrt(3.0 * nn * nn + 1.0);
  return {(s - (nn + 1.0)) / (3.0 * (nn - 1.0)), (s - (nn - 1.0)) / (2.0 * nn)};
}

void require_dim(int n) {
  if (n < 2) throw DomainError("dimension must be >= 2, got " + std::to_string(n));
}

CurvatureSpectrum require_k2_sorted(const CurvatureSpectrum& kappa) {
  if (kappa.size() < 2) throw PreconditionError("need n >= 2 curvatures");
  if (!in_garding_cone(2, kappa).member) {
    throw PreconditionError("curvature vector is not in the Garding cone K_2");
  }
  return kappa.is_sorted_descending() ? kappa : kappa.sorted_descending();
}

}  // namespace

JacobiConstants jacobi_constants(int n, double sigma, double N) {
  require_dim(n);
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw DomainError("sigma must lie in (0,1)");
  }
  if (!(N > 1.0) || !std::isfinite(N)) throw DomainError("N must exceed 1");
  const AlphaBeta ab = alpha_beta(n);
  JacobiConstants c;
  c.n = n;
  c.alpha = ab.alpha;
  c.beta = ab.beta;
  c.a0 = a0();
  c.N = N;
  c.sigma = sigma;
  c.eta = (N / (N - 1.0)) * (2.0 / sigma) * (1.0 + std::sqrt(2.0));
  return c;
}

double jacobi_epsilon(const JacobiConstants& c, const CurvatureSpectrum& kappa) {
  if (kappa.size() != c.n) throw DomainError("dimension mismatch");
  const double kmin = kappa.values().minCoeff();
  return c.alpha * (c.beta + kmin / kappa.values().sum());
}

double verify_sharp1(const CurvatureSpectrum& kappa) {
  const CurvatureSpectrum k = require_k2_sorted(kappa);
  const int n = k.size();
  return k[n - 1] + (static_cast<double>(n - 2) / n) * k.values().sum();
}

std::array<double, 4> verify_sharp2(const CurvatureSpectrum& kappa) {
  const CurvatureSpectrum k = require_k2_sorted(kappa);
  const int n = k.size();
  const double S1 = k.values().sum();
  const double S2 = s2(k.values());
  const double ratio = static_cast<double>(n - 1) / n;
  const double f1 = S1 - k[0];
  // f_i is increasing in i for descending kappa.
  const double f2 = S1 - k[1];
  const double fn = S1 - k[n - 1];
  return {f1 - S2 / S1, ratio * S1 - f1,
          f2 - (1.0 - 1.0 / std::sqrt(2.0)) * S1, 2.0 * ratio * S1 - fn};
}

double sharp2_indexed_slack(const CurvatureSpectrum& kappa) {
  const CurvatureSpectrum k = require_k2_sorted(kappa);
  const double S1 = k.values().sum();
  double slack = std::numeric_limits<double>::infinity();
  for (int i = 1; i < k.size(); ++i) {
    const double one_based = i + 1.0;
    slack = std::min(slack, (S1 - k[i]) - (1.0 - 1.0 / std::sqrt(one_based)) * S1);
  }
  return slack;
}

Eigen::VectorXd s2_gradient(const Eigen::VectorXd& kappa) {
  return (kappa.sum() - kappa.array()).matrix();
}

QFormSample make_qform_sample(const CurvatureSpectrum& kappa, int i,
                              Eigen::VectorXd t, double eps_scale) {
  QFormSample s;
  s.kappa = require_k2_sorted(kappa);
  const int n = s.kappa.size();
  if (i < 0 || i >= n) throw DomainError("direction index out of range");
  if (t.size() != n) throw DomainError("t must have length n");
  const Eigen::VectorXd df = s2_gradient(s.kappa.values());
  if (std::abs(df.dot(t)) > 1e-12 * df.norm() * t.norm()) {
    throw PreconditionError("t is not orthogonal to Df");
  }
  const AlphaBeta ab = alpha_beta(n);
  s.i = i;
  s.t = std::move(t);
  s.eps_j = eps_scale * ab.alpha *
            (ab.beta + s.kappa[n - 1] / s.kappa.values().sum());
  s.delta = 1.0 + s.eps_j;
  return s;
}

double qform_value(const QFormSample& sample) {
  const Eigen::VectorXd& k = sample.kappa.values();
  const double S1 = k.sum();
  const double fi = S1 - k[sample.i];
  const double gamma = 1.0 + sample.delta * fi / S1;
  const double ti = sample.t[sample.i];
  const double tsum = sample.t.sum();
  return 3.0 * sample.t.squaredNorm() - 2.0 * ti * ti - gamma * tsum * tsum;
}

TraceDet trace_det_analysis(const CurvatureSpectrum& kappa, int i, double delta) {
  const CurvatureSpectrum k = require_k2_sorted(kappa);
  const int n = k.size();
  if (i < 0 || i >= n) throw DomainError("direction index out of range");
  const double S1 = k.values().sum();
  const double f = s2(k.values());
  const double fi = S1 - k[i];
  const double df2 = (n - 1.0) * S1 * S1 - 2.0 * f;
  // S_1 > 0 on K_2 and |Df|^2 >= (n-1) S_1^2 - (n-1) S_1^2 / n > 0.
  TraceDet r;
  r.e_dot_e = 1.0 - fi * fi / df2;
  r.l_dot_l = 1.0 - 2.0 * f * (n - 1.0) / df2;
  r.e_dot_l = 1.0 - (n - 1.0) * S1 * fi / df2;
  const double gamma = 1.0 + delta * fi / S1;
  r.trace = 6.0 - 2.0 * r.e_dot_e - gamma * r.l_dot_l;
  r.det = 9.0 - 6.0 * r.e_dot_e - 3.0 * gamma * r.l_dot_l +
          2.0 * gamma * (r.e_dot_e * r.l_dot_l - r.e_dot_l * r.e_dot_l);
  return r;
}

TraceDet projection_products_direct(const CurvatureSpectrum& kappa, int i) {
  const int n = kappa.size();
  if (i < 0 || i >= n) throw DomainError("direction index out of range");
  const Eigen::VectorXd df = s2_gradient(kappa.values());
  const double df2 = df.squaredNorm();
  Eigen::VectorXd e = Eigen::VectorXd::Unit(n, i);
  Eigen::VectorXd l = Eigen::VectorXd::Ones(n);
  e -= (e.dot(df) / df2) * df;
  l -= (l.dot(df) / df2) * df;
  TraceDet r;
  r.e_dot_e = e.squaredNorm();
  r.l_dot_l = l.squaredNorm();
  r.e_dot_l = e.dot(l);
  return r;
}

QuadraticRoots q_delta_roots(int n) {
  require_dim(n);
  const double nn = n;
  const double s = std::sqrt(3.0 * nn * nn + 1.0);
  return {(nn + 1.0 - s) / (2.0 * nn), (nn + 1.0 + s) / (2.0 * nn)};
}

double q_delta(int n, double delta, double y) {
  const double nn = n;
  return (nn - 1.0) * (4.0 - 3.0 * delta) +
         (6.0 - 2.0 * nn + 4.0 * (nn - 1.0) * delta) * y - 2.0 * nn * delta * y * y;
}

Claim1Certificate claim1_certificate(int n, double N) {
  require_dim(n);
  const double nn = n;
  const double s = std::sqrt(3.0 * nn * nn + 1.0);
  const double alpha = (s - (nn + 1.0)) / (3.0 * (nn - 1.0));
  // beta_n - (n-2)/n written over a common denominator.
  const double shifted_beta = (s - 3.0 * nn + 5.0) / (2.0 * nn);
  return {alpha * shifted_beta + a0(), 1.0 - a0() * N};
}

Claim2Certificate claim2_certificate(int n, double N, double theta) {
  require_dim(n);
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("theta must lie in (0,1)");
  if (!(N > 1.0)) throw DomainError("N must exceed 1");
  const AlphaBeta ab = alpha_beta(n);
  Claim2Certificate c;
  c.threshold = 2.0 / (N * (N - 1.0));
  c.margin = ab.alpha * ab.beta - c.threshold;
  c.theta = theta;
  // B^2 / (4A) with A = (1-theta) alpha beta N^2 + N and B = 2N.
  const double A = (1.0 - theta) * ab.alpha * ab.beta * N * N + N;
  c.discriminant_ratio = (2.0 * N) * (2.0 * N) / (4.0 * A);
  c.discriminant_margin = (N - 1.0) - c.discriminant_ratio;
  return c;
}

double claim1_quadratic(double kappa_i, double N, double nu_up) {
  if (!(N > 1.0)) throw DomainError("N must exceed 1");
  if (!(nu_up > 0.0 && nu_up <= 1.0)) throw DomainError("nu_up must lie in (0,1]");
  return 0.5 * (N - 1.0) * kappa_i * kappa_i + (2.0 * N / nu_up) * kappa_i - 2.0 * N;
}

double claim1_negative_root(double N, double nu_up) {
  if (!(N > 1.0)) throw DomainError("N must exceed 1");
  if (!(nu_up > 0.0 && nu_up <= 1.0)) throw DomainError("nu_up must lie in (0,1]");
  const double inner = (1.0 + nu_up * nu_up) / (nu_up * nu_up) * N * N - N;
  return -(2.0 * N / nu_up + 2.0 * std::sqrt(inner)) / (N - 1.0);
}

// ---------------------------------------------------------------------------

namespace {

Eigen::VectorXd normal_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = gauss(rng);
  return v;
}

std::optional<Eigen::VectorXd> draw_positive(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = unit(rng);
  return v;
}

std::optional<Eigen::VectorXd> draw_interior(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> shift(0.0, 2.0);
  Eigen::VectorXd v = normal_vector(rng, n);
  v.array() += shift(rng);
  return v;
}

// Entries near a common value with log-uniform spread; the last coordinate
// is solved from S_2(kappa) = level * S_1(kappa')^2.
std::optional<Eigen::VectorXd> draw_boundary(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> log_spread(-3.0, 0.3);
  std::uniform_real_distribution<double> log_level(-8.0, 0.0);
  const double spread = std::pow(10.0, log_spread(rng));
  Eigen::VectorXd head = normal_vector(rng, n - 1);
  head = (1.0 + spread * head.array()).matrix();
  const double s1h = head.sum();
  if (!(s1h > 0.0)) return std::nullopt;
  const double s2h = s2(head);
  const double target = 0.25 * std::pow(10.0, log_level(rng)) * s1h * s1h;
  Eigen::VectorXd v(n);
  v.head(n - 1) = head;
  v[n - 1] = (target - s2h) / s1h;
  return v;
}

}  // namespace

K2Sample sample_k2(std::mt19937_64& rng, int n, std::optional<SampleFamily> family) {
  require_dim(n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    SampleFamily fam;
    if (family) {
      fam = *family;
    } else {
      const double m = unit(rng);
      fam = m < 0.3 ? SampleFamily::positive
                    : (m < 0.5 ? SampleFamily::interior : SampleFamily::boundary);
    }
    std::optional<Eigen::VectorXd> v;
    switch (fam) {
      case SampleFamily::positive: v = draw_positive(rng, n); break;
      case SampleFamily::interior: v = draw_interior(rng, n); break;
      case SampleFamily::boundary: v = draw_boundary(rng, n); break;
    }
    if (!v || !v->allFinite()) continue;
    const double S1 = v->sum();
    if (!(S1 > 0.0)) continue;
    *v /= S1;
    // Test the vector as returned: near S_2 = 0 the sign can depend on the
    // summation order.
    CurvatureSpectrum k = CurvatureSpectrum(std::move(*v)).sorted_descending();
    if (!in_garding_cone(2, k).member) continue;
    K2Sample out;
    out.kappa = std::move(k);
    out.family = fam;
    const double t = out.kappa.values().sum();
    out.boundary_level = s2(out.kappa.values()) / (t * t);
    return out;
  }
}

Eigen::VectorXd sample_tangent_direction(std::mt19937_64& rng,
                                         const Eigen::VectorXd& normal) {
  const double nn = normal.norm();
  if (!(nn > 0.0)) throw DomainError("normal vector must be non-zero");
  const Eigen::VectorXd unit_normal = normal / nn;
  for (;;) {
    Eigen::VectorXd z = normal_vector(rng, static_cast<int>(normal.size()));
    z -= z.dot(unit_normal) * unit_normal;
    // Second pass removes the residual component left by rounding.
    z -= z.dot(unit_normal) * unit_normal;
    const double zn = z.norm();
    if (zn > 1e-8) return z / zn;
  }
}

}  // namespace plateau::lab
