#pragma once

#include "plateau/domain.hpp"
#include "plateau/errors.hpp"
#include "plateau/graphgeom.hpp"
#include "plateau/inequality_lab.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <memory>
#include <string>
#include <vector>

namespace plateau {

/// Closed-form equidistant cap u(x) = sqrt(rho^2 - |x|^2) - c, umbilic with
/// hyperbolic curvatures identically sigma.
struct CapProfile {
  double rho = 1.0;
  double c = 0.0;
  double sigma = 0.0;
  double base_radius = 1.0;  // |x| where u = 0

  double height(double r) const;
  CurvatureJet jet(const Eigen::VectorXd& x) const;
};

/// Cap vanishing on |x| = radius.
CapProfile exact_cap(double radius, double sigma);
/// Cap with u = eps on |x| = radius (rim pushed slightly outwards).
CapProfile exact_cap_through(double radius, double sigma, double eps);

/// One term of the linear jet map: component `comp` picks up w * u[col]
/// (or w times the value at boundary point `col` for boundary terms).
struct JetTerm {
  int comp;
  int col;
  double w;
};

/// Uniform grid over the bounding box of a domain together with the
/// precomputed linear map from unknowns (plus the boundary value) to the
/// discrete jet at every unknown. Jet components are ordered
/// u, p_1..p_n, then M_kl for k <= l.
class Discretization {
 public:
  Discretization(const DomainSpec& spec, int resolution);

  const DomainSpec& spec() const noexcept { return spec_; }
  int dim() const noexcept { return spec_.dim; }
  int resolution() const noexcept { return resolution_; }
  double h() const noexcept { return h_; }
  int unknowns() const noexcept { return static_cast<int>(positions_.size()); }
  int components() const noexcept { return ncomp_; }

  const Eigen::VectorXd& position(int i) const { return positions_[i]; }
  /// Whether unknown i has a stencil neighbour that is not an unknown.
  bool ring(int i) const { return ring_[i] != 0; }
  /// Node mask over the full box, row-major with the first axis slowest.
  const std::vector<char>& mask() const noexcept { return mask_; }
  const std::vector<int>& box_shape() const noexcept { return box_; }

  /// Boundary support points: snapped nodes and cut points on stencil lines.
  int boundary_points() const noexcept { return static_cast<int>(boundary_.size()); }
  const Eigen::VectorXd& boundary_point(int b) const { return boundary_[b]; }

  /// Discrete jet at unknown i with boundary value eps, plus `lift[b]` at
  /// boundary point b when a lift is given.
  CurvatureJet jet(int i, const Eigen::VectorXd& u, double eps,
                   const Eigen::VectorXd* lift = nullptr) const;
  const std::vector<JetTerm>& terms(int i) const { return terms_[i]; }
  const std::vector<JetTerm>& boundary_terms(int i) const { return bterms_[i]; }
  /// Index of the jet component for M_kl.
  int hessian_component(int k, int l) const;

 private:
  DomainSpec spec_;
  int resolution_;
  double h_;
  int ncomp_;
  std::vector<int> box_;
  std::vector<char> mask_;
  std::vector<Eigen::VectorXd> positions_;
  std::vector<char> ring_;
  std::vector<std::vector<JetTerm>> terms_;
  std::vector<std::vector<JetTerm>> bterms_;
  std::vector<Eigen::VectorXd> eps_coeff_;
  std::vector<Eigen::VectorXd> boundary_;
};

struct GridSolution {
  DomainSpec spec;
  std::shared_ptr<const Discretization> grid;
  double h_grid = 0.0;
  Eigen::VectorXd u;  // one value per unknown
  double sigma = 0.6;
  double eps_boundary = 0.01;
  // Optional boundary data on top of eps, one entry per boundary point. Only
  // used while homotoping from a cap start on non-ball domains.
  Eigen::VectorXd boundary_lift;
  bool converged = false;
  int newton_iters = 0;
};

/// Grid solution initialised from a height function.
GridSolution sample_solution(std::shared_ptr<const Discretization> grid,
                             double sigma, double eps,
                             const std::function<double(const Eigen::VectorXd&)>& f);

struct ResidualField {
  Eigen::VectorXd values;
  std::vector<char> admissible;

  bool all_admissible() const;
  double linf() const { return values.size() ? values.lpNorm<Eigen::Infinity>() : 0.0; }
};

/// S_2(kappa) - C(n,2) sigma^2 at every unknown. Throws StateError if a
/// height is not positive.
ResidualField residual(const GridSolution& sol);

/// Sparse Jacobian of `residual` with respect to the unknowns.
Eigen::SparseMatrix<double> jacobian(const GridSolution& sol);

struct StepDiagnostics {
  double residual_before = 0.0;
  double residual_after = 0.0;
  double damping = 1.0;
  int halvings = 0;
};

struct NewtonOptions {
  double tolerance = 1e-10;
  int max_iterations = 15;
};

/// Damped Newton update; throws StagnationError if the damping underflows
/// and NumericError if the linear solve fails.
StepDiagnostics newton_step(GridSolution& sol);

struct EstimateReport {
  double min_nu_up = 0.0;
  double min_kappa = 0.0;
  double max_S1_interior = 0.0;
  double max_S1_boundary_ring = 0.0;
  double ratio = 0.0;
  bool q_argmax_on_boundary = false;
  Eigen::VectorXd q_argmax_point;
  double q_max = 0.0;
  double residual_linf = 0.0;

  std::string q_argmax_location() const {
    return q_argmax_on_boundary ? "boundary" : "interior";
  }
};

EstimateReport estimate_report(const GridSolution& sol, const lab::JacobiConstants& constants);

struct StageRecord {
  double sigma = 0.0;
  double eps = 0.0;
  double lift = 0.0;  // fraction of the initial boundary lift still applied
  int iterations = 0;
  std::vector<double> residual_history;
  EstimateReport report;
};

struct ContinuationOptions {
  int resolution = 64;
  NewtonOptions newton;
  double sigma_start = 0.9;
  double sigma_step = 0.05;
  int lift_steps = 4;  // boundary-lift homotopy stages on non-ball domains
  double N = lab::default_N();
};

struct ContinuationResult {
  GridSolution solution;
  std::vector<StageRecord> stages;
};

/// Thrown when a stage fails to converge after bisection; carries the last
/// converged state.
class ContinuationStagnation : public StagnationError {
 public:
  ContinuationStagnation(const std::string& what, ContinuationResult partial)
      : StagnationError(what), partial_(std::move(partial)) {}
  const ContinuationResult& partial() const noexcept { return partial_; }

 private:
  ContinuationResult partial_;
};

/// Newton iteration at fixed (sigma, eps) until the residual drops below
/// tolerance. Returns the residual history.
std::vector<double> solve_stage(GridSolution& sol, const NewtonOptions& options);

ContinuationResult continuation_solve(const DomainSpec& spec, double sigma_target,
                                      const std::vector<double>& eps_schedule,
                                      const ContinuationOptions& options = {});

}  // namespace plateau
