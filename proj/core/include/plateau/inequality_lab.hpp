#pragma once

#include "plateau/symfunc.hpp"

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <optional>
#include <random>

namespace plateau::lab {

/// a_0 = 2/sqrt(3) - 1.
inline double a0() { return 2.0 / std::sqrt(3.0) - 1.0; }
/// Default test-function weight N = 3 + 2 sqrt(3) = 1/a_0.
inline double default_N() { return 3.0 + 2.0 * std::sqrt(3.0); }

/// Dimension constants of the almost-Jacobi inequality together with the
/// weight N and the curvature cutoff eta of the lower-bound argument.
struct JacobiConstants {
  int n = 2;
  double alpha = 0.0;
  double beta = 0.0;
  double a0 = 0.0;
  double N = 0.0;
  double eta = 0.0;
  double sigma = 0.0;
};

JacobiConstants jacobi_constants(int n, double sigma, double N = default_N());

/// alpha_n (beta_n + kappa_n / S_1).
double jacobi_epsilon(const JacobiConstants& c, const CurvatureSpectrum& kappa);

/// kappa_n + ((n-2)/n) S_1. Positive on K_2.
double verify_sharp1(const CurvatureSpectrum& kappa);

/// Slacks of the four two-sided bounds on f_i = S_1 - kappa_i:
///   f_1 - S_2/S_1,  ((n-1)/n) S_1 - f_1,
///   min_{i>=2} f_i - (1 - 1/sqrt 2) S_1,  2((n-1)/n) S_1 - max_{i>=2} f_i.
std::array<double, 4> verify_sharp2(const CurvatureSpectrum& kappa);

/// min_{i>=2} [f_i - (1 - i^{-1/2}) S_1] with one-based i. Recorded only.
double sharp2_indexed_slack(const CurvatureSpectrum& kappa);

struct QFormSample {
  CurvatureSpectrum kappa{1.0, 1.0};  // in K_2, descending
  int i = 0;                          // zero-based differentiation direction
  Eigen::VectorXd t;                  // <Df, t> = 0
  double eps_j = 0.0;
  double delta = 1.0;                 // 1 + eps_j
};

/// Builds a sample, sorting kappa, and checks the sample invariants.
/// `eps_scale` multiplies eps_j (1 for the genuine form; used for fault runs).
QFormSample make_qform_sample(const CurvatureSpectrum& kappa, int i,
                              Eigen::VectorXd t, double eps_scale = 1.0);

/// Q = 3|t|^2 - 2 <e_i, t>^2 - (1 + delta f_i / S_1) <(1,...,1), t>^2.
double qform_value(const QFormSample& sample);

struct TraceDet {
  double trace = 0.0;
  double det = 0.0;
  double e_dot_e = 0.0;
  double l_dot_l = 0.0;
  double e_dot_l = 0.0;
};

/// Trace and determinant of the quadratic form restricted to span{E, L},
/// using the closed forms for |E|^2, |L|^2 and E.L.
TraceDet trace_det_analysis(const CurvatureSpectrum& kappa, int i, double delta);

/// Same inner products by explicit projection of e_i and (1,...,1) onto Df^perp.
TraceDet projection_products_direct(const CurvatureSpectrum& kappa, int i);

/// Gradient of S_2 at kappa, f_i = S_1 - kappa_i.
Eigen::VectorXd s2_gradient(const Eigen::VectorXd& kappa);

struct QuadraticRoots {
  double y_minus = 0.0;
  double y_plus = 0.0;
};

QuadraticRoots q_delta_roots(int n);

/// q_delta(y) = (n-1)(4 - 3 delta) + (6 - 2n + 4(n-1) delta) y - 2 n delta y^2.
double q_delta(int n, double delta, double y);

struct Claim1Certificate {
  double margin = 0.0;     // alpha_n (beta_n - (n-2)/n) + a_0
  double companion = 0.0;  // 1 - a_0 N
};

Claim1Certificate claim1_certificate(int n, double N = default_N());

struct Claim2Certificate {
  double margin = 0.0;     // alpha_n beta_n - 2 / (N (N - 1))
  double threshold = 0.0;  // 2 / (N (N - 1))
  double theta = 0.0;
  double discriminant_ratio = 0.0;   // 1 / ((1 - theta) alpha_n beta_n + a_0)
  double discriminant_margin = 0.0;  // (N - 1) - discriminant_ratio
};

inline constexpr double kClaim2Theta = 0.01;

Claim2Certificate claim2_certificate(int n, double N = default_N(),
                                     double theta = kClaim2Theta);

/// ((N-1)/2) k^2 + (2N/nu) k - 2N.
double claim1_quadratic(double kappa_i, double N, double nu_up);

/// Negative root of `claim1_quadratic` in kappa_i.
double claim1_negative_root(double N, double nu_up);

// ---------------------------------------------------------------------------
// Random sampling of K_2.

enum class SampleFamily { positive, interior, boundary };

struct K2Sample {
  CurvatureSpectrum kappa{1.0, 1.0};  // descending, normalized to S_1 = 1
  SampleFamily family = SampleFamily::positive;
  double boundary_level = 0.0;        // S_2 / S_1^2
};

/// Draws from the mixture 30% positive cone, 20% generic K_2, 50% draws
/// hugging the boundary S_2 = 0 (last coordinate solved from S_2 = s).
K2Sample sample_k2(std::mt19937_64& rng, int n,
                   std::optional<SampleFamily> family = std::nullopt);

/// Standard normal vector with its component along `normal` removed, scaled
/// to unit length.
Eigen::VectorXd sample_tangent_direction(std::mt19937_64& rng,
                                         const Eigen::VectorXd& normal);

}  // namespace plateau::lab
