#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>

namespace plateau {

enum class DomainShape { ball, ellipse, annulus };

std::string to_string(DomainShape shape);
std::optional<DomainShape> parse_shape(const std::string& name);

/// Bounded base domain Omega in R^n, n in {2, 3}.
struct DomainSpec {
  int dim = 2;
  DomainShape shape = DomainShape::ball;
  double radius = 1.0;          // ball
  Eigen::VectorXd semi_axes;    // ellipse, length dim
  double r_in = 0.0;            // annulus
  double r_out = 0.0;
  Eigen::VectorXd center;       // length dim
  bool allow_non_mean_convex = false;

  static DomainSpec ball(int dim, double radius);
  static DomainSpec ellipse(Eigen::VectorXd semi_axes);
  static DomainSpec annulus(int dim, double r_in, double r_out,
                            bool allow_non_mean_convex = false);

  /// Throws DomainError on bad sizes or radii; an annulus is rejected unless
  /// `allow_non_mean_convex` is set.
  void validate() const;
  bool mean_convex() const noexcept { return shape != DomainShape::annulus; }

  /// Strict interior test.
  bool contains(const Eigen::VectorXd& x) const;
  /// For x inside and x + d outside, the fraction s in (0, 1] at which the
  /// segment x + s d first leaves the domain.
  double exit_fraction(const Eigen::VectorXd& x, const Eigen::VectorXd& d) const;
  /// Half-widths of the axis-aligned bounding box about `center`.
  Eigen::VectorXd half_extent() const;
  /// Radius of the smallest ball about `center` containing the domain.
  double circumscribed_radius() const;
};

}  // namespace plateau
