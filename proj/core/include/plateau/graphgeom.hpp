#pragma once

#include "plateau/symfunc.hpp"

#include <Eigen/Core>

#include <functional>
#include <utility>

namespace plateau {

/// Second-order jet (u, Du, D^2u) of a vertical graph x_{n+1} = u(x) in the
/// upper half-space.
struct CurvatureJet {
  double u = 1.0;
  Eigen::VectorXd du;
  Eigen::MatrixXd d2u;

  CurvatureJet() = default;
  CurvatureJet(double height, Eigen::VectorXd gradient, Eigen::MatrixXd hessian);

  int dim() const noexcept { return static_cast<int>(du.size()); }
  /// Throws DomainError unless u > 0, sizes agree and d2u is symmetric.
  void validate() const;
};

/// Pointwise geometry of the graph at one point.
struct GraphFrame {
  double w = 1.0;           // sqrt(1 + |Du|^2)
  Eigen::VectorXd nu;       // Euclidean upward unit normal, length n+1
  double nu_up = 1.0;       // nu^{n+1} = 1/w
  Eigen::MatrixXd g;        // hyperbolic first fundamental form
  Eigen::MatrixXd g_inv;
  Eigen::MatrixXd h;        // hyperbolic second fundamental form
  Eigen::MatrixXd h_tilde;  // Euclidean second fundamental form
  Eigen::MatrixXd shape;    // A = g^{-1} h (not symmetric in general)
  // Symmetric matrix similar to A: L^T h L with g^{-1} = L L^T.
  Eigen::MatrixXd shape_sym;
  Eigen::MatrixXd chol_inv_metric;  // L
  CurvatureSpectrum kappa{1.0};        // hyperbolic, descending
  CurvatureSpectrum kappa_tilde{1.0};  // Euclidean, descending
};

GraphFrame build_frame(const CurvatureJet& jet);

/// F^{ij} = dF/da_ij for F(A) = S_2(lambda(A)) at a symmetric matrix A,
/// computed spectrally as V diag(f_i) V^T with f_i = S_1 - lambda_i.
Eigen::MatrixXd shape_operator_derivatives(const Eigen::MatrixXd& sym_shape);

/// Same quantity for the shape matrix of a graph, expressed in the
/// symmetric frame L^T h L used by `build_frame`.
Eigen::MatrixXd shape_operator_derivatives(const CurvatureJet& jet);

/// Gradient of S_2(lambda(A)) with respect to the entries of an arbitrary
/// square matrix A, by the trace identity S_2(A) = ((tr A)^2 - tr A^2) / 2:
/// dS_2/da_ij = tr(A) delta_ij - a_ji.
Eigen::MatrixXd s2_matrix_gradient(const Eigen::MatrixXd& a);

/// S_2 of the eigenvalues of a square matrix, via the trace identity.
double s2_matrix(const Eigen::MatrixXd& a);

/// Radially symmetric graph u = height(|x|) defined for 0 <= r < r_max.
struct RadialProfile {
  std::function<double(double)> height;
  double r_max = 1.0;
};

struct NuGradientCheck {
  double lhs = 0.0;  // tau(nu^{n+1}) by finite differences in arclength
  double rhs = 0.0;  // (tau(u)/u) (nu^{n+1} - kappa_radial)
};

/// Compares the directional derivative of nu^{n+1} along the unit radial
/// tangent with (u_r e / u)(nu^{n+1} - kappa_r), e = u/w, at radius r.
/// `dim` is the base dimension n; `step` the finite-difference step in r.
NuGradientCheck nu_gradient_check(const RadialProfile& profile, double r,
                                  int dim = 2, double step = 1e-4);

}  // namespace plateau
