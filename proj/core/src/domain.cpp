#include "plateau/domain.hpp"

#include "plateau/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace plateau {

namespace {

// Smallest root s > 0 of |(y + s d) ./ axes|^2 = 1 given |y ./ axes| < 1.
double leave_ellipsoid(const Eigen::VectorXd& y, const Eigen::VectorXd& d,
                       const Eigen::VectorXd& axes) {
  const Eigen::ArrayXd ya = y.array() / axes.array();
  const Eigen::ArrayXd da = d.array() / axes.array();
  const double a = (da * da).sum();
  const double b = 2.0 * (ya * da).sum();
  const double c = (ya * ya).sum() - 1.0;
  const double disc = std::max(0.0, b * b - 4.0 * a * c);
  // c < 0, so the roots have opposite signs; use the cancellation-free form.
  return b >= 0.0 ? (-2.0 * c) / (b + std::sqrt(disc))
                  : (-b + std::sqrt(disc)) / (2.0 * a);
}

// Smallest root s > 0 of |y + s d| = r given |y| > r, or +inf.
double enter_sphere(const Eigen::VectorXd& y, const Eigen::VectorXd& d, double r) {
  const double a = d.squaredNorm();
  const double b = 2.0 * y.dot(d);
  const double c = y.squaredNorm() - r * r;
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0 || b >= 0.0) return std::numeric_limits<double>::infinity();
  // Both roots positive; the smaller one is 2c / (-b + sqrt(disc)).
  return (2.0 * c) / (-b + std::sqrt(disc));
}

}  // namespace

std::string to_string(DomainShape shape) {
  switch (shape) {
    case DomainShape::ball: return "ball";
    case DomainShape::ellipse: return "ellipse";
    case DomainShape::annulus: return "annulus";
  }
  return "unknown";
}

std::optional<DomainShape> parse_shape(const std::string& name) {
  if (name == "ball") return DomainShape::ball;
  if (name == "ellipse") return DomainShape::ellipse;
  if (name == "annulus") return DomainShape::annulus;
  return std::nullopt;
}

DomainSpec DomainSpec::ball(int dim, double radius) {
  DomainSpec d;
  d.dim = dim;
  d.shape = DomainShape::ball;
  d.radius = radius;
  d.center = Eigen::VectorXd::Zero(dim);
  d.validate();
  return d;
}

DomainSpec DomainSpec::ellipse(Eigen::VectorXd semi_axes) {
  DomainSpec d;
  d.dim = static_cast<int>(semi_axes.size());
  d.shape = DomainShape::ellipse;
  d.semi_axes = std::move(semi_axes);
  d.center = Eigen::VectorXd::Zero(d.dim);
  d.validate();
  return d;
}

DomainSpec DomainSpec::annulus(int dim, double r_in, double r_out,
                               bool allow_non_mean_convex) {
  DomainSpec d;
  d.dim = dim;
  d.shape = DomainShape::annulus;
  d.r_in = r_in;
  d.r_out = r_out;
  d.center = Eigen::VectorXd::Zero(dim);
  d.allow_non_mean_convex = allow_non_mean_convex;
  d.validate();
  return d;
}

void DomainSpec::validate() const {
  if (dim != 2 && dim != 3) throw DomainError("base dimension must be 2 or 3");
  if (center.size() != dim) throw DomainError("center must have length dim");
  if (!center.allFinite()) throw DomainError("center must be finite");
  switch (shape) {
    case DomainShape::ball:
      if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw DomainError("ball radius must be positive");
      }
      break;
    case DomainShape::ellipse:
      if (semi_axes.size() != dim) throw DomainError("ellipse needs dim semi-axes");
      if (!semi_axes.allFinite() || !(semi_axes.minCoeff() > 0.0)) {
        throw DomainError("ellipse semi-axes must be positive");
      }
      break;
    case DomainShape::annulus:
      if (!(r_in > 0.0) || !(r_out > r_in) || !std::isfinite(r_out)) {
        throw DomainError("annulus needs 0 < r_in < r_out");
      }
      if (!allow_non_mean_convex) {
        throw DomainError(
            "annulus is not mean-convex (inner boundary); set "
            "allow_non_mean_convex to solve on it anyway");
      }
      break;
  }
}

bool DomainSpec::contains(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd y = x - center;
  switch (shape) {
    case DomainShape::ball: return y.squaredNorm() < radius * radius;
    case DomainShape::ellipse:
      return (y.array() / semi_axes.array()).square().sum() < 1.0;
    case DomainShape::annulus: {
      const double r2 = y.squaredNorm();
      return r2 < r_out * r_out && r2 > r_in * r_in;
    }
  }
  return false;
}

double DomainSpec::exit_fraction(const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& d) const {
  const Eigen::VectorXd y = x - center;
  double s = 0.0;
  switch (shape) {
    case DomainShape::ball:
      s = leave_ellipsoid(y, d, Eigen::VectorXd::Constant(dim, radius));
      break;
    case DomainShape::ellipse: s = leave_ellipsoid(y, d, semi_axes); break;
    case DomainShape::annulus:
      s = std::min(leave_ellipsoid(y, d, Eigen::VectorXd::Constant(dim, r_out)),
                   enter_sphere(y, d, r_in));
      break;
  }
  return std::clamp(s, 0.0, 1.0);
}

Eigen::VectorXd DomainSpec::half_extent() const {
  switch (shape) {
    case DomainShape::ball: return Eigen::VectorXd::Constant(dim, radius);
    case DomainShape::ellipse: return semi_axes;
    case DomainShape::annulus: return Eigen::VectorXd::Constant(dim, r_out);
  }
  return Eigen::VectorXd::Zero(dim);
}

double DomainSpec::circumscribed_radius() const {
  switch (shape) {
    case DomainShape::ball: return radius;
    case DomainShape::ellipse: return semi_axes.maxCoeff();
    case DomainShape::annulus: return r_out;
  }
  return 0.0;
}

}  // namespace plateau
