#include "plateau/graphgeom.hpp"

#include "plateau/errors.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace plateau {

namespace {

struct SymSpectrum {
  Eigen::VectorXd values;  // descending
  Eigen::MatrixXd vectors;
};

SymSpectrum symmetric_spectrum(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) {
    throw NumericError("symmetric eigen-solver did not converge");
  }
  // Eigen returns ascending order.
  SymSpectrum out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

Eigen::MatrixXd lower_cholesky(const Eigen::MatrixXd& spd, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(spd);
  if (llt.info() != Eigen::Success) {
    throw NumericError(std::string("Cholesky factorization of ") + what +
                       " failed");
  }
  return llt.matrixL();
}

}  // namespace

CurvatureJet::CurvatureJet(double height, Eigen::VectorXd gradient,
                           Eigen::MatrixXd hessian)
    : u(height), du(std::move(gradient)), d2u(std::move(hessian)) {}

void CurvatureJet::validate() const {
  if (!(u > 0.0) || !std::isfinite(u)) {
    throw DomainError("graph height must be positive and finite, got u=" +
                      std::to_string(u));
  }
  const auto n = du.size();
  if (n < 1 || d2u.rows() != n || d2u.cols() != n) {
    throw DomainError("jet dimensions disagree");
  }
  if (!du.allFinite() || !d2u.allFinite()) {
    throw DomainError("jet has non-finite entries");
  }
  const double asym = (d2u - d2u.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-14 * std::max(1.0, d2u.cwiseAbs().maxCoeff())) {
    throw DomainError("Hessian of the jet is not symmetric");
  }
}

GraphFrame build_frame(const CurvatureJet& jet) {
  jet.validate();
  const int n = jet.dim();
  const double u = jet.u;
  const Eigen::VectorXd& p = jet.du;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd ppt = p * p.transpose();

  GraphFrame f;
  f.w = std::sqrt(1.0 + p.squaredNorm());
  f.nu_up = 1.0 / f.w;
  f.nu.resize(n + 1);
  f.nu.head(n) = -p / f.w;
  f.nu[n] = f.nu_up;

  const Eigen::MatrixXd g_tilde = id + ppt;
  const Eigen::MatrixXd g_tilde_inv = id - ppt / (f.w * f.w);
  f.g = g_tilde / (u * u);
  f.g_inv = (u * u) * g_tilde_inv;
  f.h_tilde = jet.d2u / f.w;
  f.h = (g_tilde + u * jet.d2u) / (u * u * f.w);
  // g^{-1} h simplifies to (I + u (I - p p^T / w^2) D^2u) / w.
  f.shape = (id + u * g_tilde_inv * jet.d2u) / f.w;

  f.chol_inv_metric = lower_cholesky(f.g_inv, "the inverse metric");
  Eigen::MatrixXd sym = f.chol_inv_metric.transpose() * f.h * f.chol_inv_metric;
  f.shape_sym = 0.5 * (sym + sym.transpose());
  f.kappa = CurvatureSpectrum(symmetric_spectrum(f.shape_sym).values);

  const Eigen::MatrixXd lt = lower_cholesky(g_tilde_inv, "the Euclidean inverse metric");
  Eigen::MatrixXd sym_e = lt.transpose() * f.h_tilde * lt;
  sym_e = 0.5 * (sym_e + sym_e.transpose());
  f.kappa_tilde = CurvatureSpectrum(symmetric_spectrum(sym_e).values);
  return f;
}

Eigen::MatrixXd shape_operator_derivatives(const Eigen::MatrixXd& sym_shape) {
  if (sym_shape.rows() != sym_shape.cols() || sym_shape.rows() < 1) {
    throw DomainError("shape matrix must be square");
  }
  const SymSpectrum sp = symmetric_spectrum(0.5 * (sym_shape + sym_shape.transpose()));
  const double trace = sp.values.sum();
  // F is a spectral function of a symmetric f, so V diag(f_i) V^T is its
  // gradient even where eigenvalues coincide.
  const Eigen::VectorXd fi = (trace - sp.values.array()).matrix();
  return sp.vectors * fi.asDiagonal() * sp.vectors.transpose();
}

Eigen::MatrixXd shape_operator_derivatives(const CurvatureJet& jet) {
  return shape_operator_derivatives(build_frame(jet).shape_sym);
}

Eigen::MatrixXd s2_matrix_gradient(const Eigen::MatrixXd& a) {
  const auto n = a.rows();
  return a.trace() * Eigen::MatrixXd::Identity(n, n) - a.transpose();
}

double s2_matrix(const Eigen::MatrixXd& a) {
  const double t = a.trace();
  return 0.5 * (t * t - (a * a).trace());
}

NuGradientCheck nu_gradient_check(const RadialProfile& profile, double r,
                                  int dim, double step) {
  if (dim < 1) throw DomainError("base dimension must be >= 1");
  if (!(step > 0.0)) throw DomainError("finite-difference step must be positive");
  if (r < 0.0 || r + 3.0 * step >= profile.r_max) {
    throw DomainError("radius " + std::to_string(r) +
                      " too close to the edge of the profile domain");
  }
  // Even extension so that central differences at r = 0 are symmetric.
  const auto height = [&](double s) { return profile.height(std::abs(s)); };
  const auto slope = [&](double s) {
    return (height(s + step) - height(s - step)) / (2.0 * step);
  };
  const auto nu_up = [&](double s) {
    const double d = slope(s);
    return 1.0 / std::sqrt(1.0 + d * d);
  };

  const double u = height(r);
  if (!(u > 0.0)) throw DomainError("profile height must be positive");
  const double ur = slope(r);
  const double urr = (height(r + step) - 2.0 * u + height(r - step)) / (step * step);

  Eigen::VectorXd du = Eigen::VectorXd::Zero(dim);
  du[0] = ur;
  Eigen::MatrixXd d2u = Eigen::MatrixXd::Zero(dim, dim);
  d2u(0, 0) = urr;
  for (int k = 1; k < dim; ++k) d2u(k, k) = r > 0.0 ? ur / r : urr;
  const GraphFrame frame = build_frame(CurvatureJet(u, du, d2u));
  // e_1 is an eigenvector of the shape matrix at (r, 0, ..., 0).
  const double kappa_radial = frame.shape(0, 0);

  // Unit radial tangent tau = (u / w) (d_r + u_r d_{n+1}).
  const double e = u / frame.w;
  NuGradientCheck out;
  out.lhs = e * (nu_up(r + step) - nu_up(r - step)) / (2.0 * step);
  out.rhs = (ur * e / u) * (frame.nu_up - kappa_radial);
  return out;
}

}  // namespace plateau
