#include "plateau/solver.hpp"

#include "plateau/symfunc.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace plateau {

namespace {

// Nodes closer than this fraction of a cell to the boundary are treated as
// boundary nodes themselves.
constexpr double kSnapFraction = 1e-3;
constexpr double kMinDamping = 1e-12;

// Lagrange derivative weights at 0 for nodes (-l, 0, r).
struct LineWeights {
  double d1[3];
  double d2[3];
};

LineWeights line_weights(double l, double r) {
  const double x[3] = {-l, 0.0, r};
  LineWeights lw{};
  for (int j = 0; j < 3; ++j) {
    const int m = (j + 1) % 3;
    const int q = (j + 2) % 3;
    const double denom = (x[j] - x[m]) * (x[j] - x[q]);
    lw.d1[j] = (-x[m] - x[q]) / denom;
    lw.d2[j] = 2.0 / denom;
  }
  return lw;
}

struct Offset {
  std::vector<int> step;  // integer lattice direction
  int k, l;               // axis pair (k == l for axis directions)
  double sign;            // +1 for e_k + e_l, -1 for e_k - e_l
};

std::vector<Offset> stencil_directions(int n) {
  std::vector<Offset> dirs;
  for (int k = 0; k < n; ++k) {
    Offset o{std::vector<int>(n, 0), k, k, 1.0};
    o.step[k] = 1;
    dirs.push_back(o);
  }
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      for (double sign : {1.0, -1.0}) {
        Offset o{std::vector<int>(n, 0), k, l, sign};
        o.step[k] = 1;
        o.step[l] = sign > 0 ? 1 : -1;
        dirs.push_back(o);
      }
    }
  }
  return dirs;
}

double cap_height(const CapProfile& cap, double r2) {
  const double t = cap.rho * cap.rho - r2;
  if (t < 0.0) throw DomainError("point lies outside the cap sphere");
  return std::sqrt(t) - cap.c;
}

}  // namespace

double CapProfile::height(double r) const { return cap_height(*this, r * r); }

CurvatureJet CapProfile::jet(const Eigen::VectorXd& x) const {
  const double t = rho * rho - x.squaredNorm();
  if (!(t > 0.0)) throw DomainError("point lies outside the cap sphere");
  const double s = std::sqrt(t);
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd du = -x / s;
  Eigen::MatrixXd d2u = -Eigen::MatrixXd::Identity(n, n) / s - x * x.transpose() / (s * s * s);
  return CurvatureJet(s - c, std::move(du), std::move(d2u));
}

CapProfile exact_cap(double radius, double sigma) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("sigma must lie in (0,1)");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("cap radius must be positive");
  CapProfile cap;
  cap.sigma = sigma;
  cap.rho = radius / std::sqrt(1.0 - sigma * sigma);
  cap.c = sigma * cap.rho;
  cap.base_radius = radius;
  return cap;
}

CapProfile exact_cap_through(double radius, double sigma, double eps) {
  if (!(sigma > 0.0 && sigma < 1.0)) throw DomainError("sigma must lie in (0,1)");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("cap radius must be positive");
  if (!(eps >= 0.0) || !std::isfinite(eps)) throw DomainError("eps must be nonnegative");
  // sqrt(rho^2 - R^2) - sigma rho = eps
  const double a = 1.0 - sigma * sigma;
  const double b = sigma * eps;
  CapProfile cap;
  cap.sigma = sigma;
  cap.rho = (b + std::sqrt(b * b + a * (radius * radius + eps * eps))) / a;
  cap.c = sigma * cap.rho;
  cap.base_radius = std::sqrt(cap.rho * cap.rho - cap.c * cap.c);
  return cap;
}

// ---------------------------------------------------------------------------

Discretization::Discretization(const DomainSpec& spec, int resolution)
    : spec_(spec), resolution_(resolution) {
  spec_.validate();
  if (resolution < 1) throw PreconditionError("grid resolution must be positive");
  const int n = spec_.dim;
  h_ = 1.0 / resolution;
  ncomp_ = 1 + n + n * (n + 1) / 2;

  const Eigen::VectorXd extent = spec_.half_extent();
  std::vector<int> half(n);
  box_.resize(n);
  for (int k = 0; k < n; ++k) {
    half[k] = static_cast<int>(std::ceil(extent[k] / h_)) + 2;
    box_[k] = 2 * half[k] + 1;
  }
  std::size_t total = 1;
  for (int b : box_) total *= static_cast<std::size_t>(b);

  std::vector<int> stride(n);
  stride[n - 1] = 1;
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * box_[k + 1];

  auto coords = [&](std::size_t flat) {
    std::vector<int> c(n);
    for (int k = 0; k < n; ++k) {
      c[k] = static_cast<int>(flat / stride[k]) % box_[k];
    }
    return c;
  };
  auto point = [&](const std::vector<int>& c) {
    Eigen::VectorXd x(n);
    for (int k = 0; k < n; ++k) x[k] = spec_.center[k] + (c[k] - half[k]) * h_;
    return x;
  };
  auto flat_of = [&](const std::vector<int>& c) {
    std::size_t f = 0;
    for (int k = 0; k < n; ++k) f += static_cast<std::size_t>(c[k]) * stride[k];
    return f;
  };

  const std::vector<Offset> dirs = stencil_directions(n);
  std::vector<Eigen::VectorXd> dvec;
  for (const Offset& o : dirs) {
    Eigen::VectorXd d(n);
    for (int k = 0; k < n; ++k) d[k] = o.step[k] * h_;
    dvec.push_back(d);
  }

  std::vector<char> inside(total, 0);
  for (std::size_t f = 0; f < total; ++f) inside[f] = spec_.contains(point(coords(f)));

  // The box has a two-cell margin, so every neighbour of an inside node is
  // a valid box node.
  auto neighbour = [&](const std::vector<int>& c, const Offset& o, int sgn) {
    std::vector<int> m = c;
    for (int k = 0; k < n; ++k) m[k] += sgn * o.step[k];
    return flat_of(m);
  };

  mask_.assign(total, 0);
  for (std::size_t f = 0; f < total; ++f) {
    if (!inside[f]) continue;
    const std::vector<int> c = coords(f);
    const Eigen::VectorXd x = point(c);
    bool snapped = false;
    for (std::size_t m = 0; m < dirs.size() && !snapped; ++m) {
      for (int sgn : {-1, 1}) {
        if (inside[neighbour(c, dirs[m], sgn)]) continue;
        if (spec_.exit_fraction(x, sgn * dvec[m]) < kSnapFraction) snapped = true;
      }
    }
    mask_[f] = snapped ? 0 : 1;
  }

  std::vector<int> unknown_of(total, -1);
  for (std::size_t f = 0; f < total; ++f) {
    if (!mask_[f]) continue;
    unknown_of[f] = static_cast<int>(positions_.size());
    positions_.push_back(point(coords(f)));
  }

  const int nu = unknowns();
  terms_.resize(nu);
  bterms_.resize(nu);
  eps_coeff_.assign(nu, Eigen::VectorXd::Zero(ncomp_));
  ring_.assign(nu, 0);

  for (std::size_t f = 0; f < total; ++f) {
    const int i = unknown_of[f];
    if (i < 0) continue;
    const std::vector<int> c = coords(f);
    const Eigen::VectorXd& x = positions_[i];
    std::map<std::pair<int, int>, double> acc;
    Eigen::VectorXd& ec = eps_coeff_[i];
    acc[{0, i}] += 1.0;

    for (std::size_t m = 0; m < dirs.size(); ++m) {
      const Offset& o = dirs[m];
      double reach[2];   // support distance in units of the lattice step
      int col[2];        // unknown index or -1 for the boundary value
      int bnd[2] = {-1, -1};
      for (int side = 0; side < 2; ++side) {
        const int sgn = side == 0 ? -1 : 1;
        const std::size_t g = neighbour(c, o, sgn);
        col[side] = unknown_of[g];
        reach[side] = 1.0;
        if (col[side] < 0) {
          ring_[i] = 1;
          if (!inside[g]) reach[side] = spec_.exit_fraction(x, sgn * dvec[m]);
          bnd[side] = static_cast<int>(boundary_.size());
          boundary_.push_back(x + sgn * reach[side] * dvec[m]);
        }
      }
      const LineWeights lw = line_weights(reach[0], reach[1]);
      const int cols[3] = {col[0], i, col[1]};
      const int bnds[3] = {bnd[0], -1, bnd[1]};

      auto add = [&](int comp, const double* wts, double scale) {
        for (int j = 0; j < 3; ++j) {
          const double w = wts[j] * scale;
          if (cols[j] >= 0) {
            acc[{comp, cols[j]}] += w;
          } else {
            ec[comp] += w;
            bterms_[i].push_back({comp, bnds[j], w});
          }
        }
      };
      if (o.k == o.l) {
        add(1 + o.k, lw.d1, 1.0 / h_);
        add(hessian_component(o.k, o.k), lw.d2, 1.0 / (h_ * h_));
      } else {
        add(hessian_component(o.k, o.l), lw.d2, o.sign / (4.0 * h_ * h_));
      }
    }
    auto& t = terms_[i];
    t.reserve(acc.size());
    for (const auto& [key, w] : acc) {
      if (w != 0.0) t.push_back({key.first, key.second, w});
    }
  }
}

int Discretization::hessian_component(int k, int l) const {
  if (k > l) std::swap(k, l);
  const int n = spec_.dim;
  // Row-major upper triangle after u and Du.
  int idx = 1 + n;
  for (int r = 0; r < k; ++r) idx += n - r;
  return idx + (l - k);
}

CurvatureJet Discretization::jet(int i, const Eigen::VectorXd& u, double eps,
                                 const Eigen::VectorXd* lift) const {
  const int n = spec_.dim;
  Eigen::VectorXd comp = eps * eps_coeff_[i];
  for (const JetTerm& t : terms_[i]) comp[t.comp] += t.w * u[t.col];
  if (lift && lift->size()) {
    for (const JetTerm& t : bterms_[i]) comp[t.comp] += t.w * (*lift)[t.col];
  }
  Eigen::VectorXd du = comp.segment(1, n);
  Eigen::MatrixXd d2u(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = k; l < n; ++l) {
      d2u(k, l) = d2u(l, k) = comp[hessian_component(k, l)];
    }
  }
  return CurvatureJet(comp[0], std::move(du), std::move(d2u));
}

// ---------------------------------------------------------------------------

GridSolution sample_solution(std::shared_ptr<const Discretization> grid, double sigma,
                             double eps,
                             const std::function<double(const Eigen::VectorXd&)>& f) {
  GridSolution sol;
  sol.spec = grid->spec();
  sol.h_grid = grid->h();
  sol.sigma = sigma;
  sol.eps_boundary = eps;
  sol.u.resize(grid->unknowns());
  for (int i = 0; i < grid->unknowns(); ++i) sol.u[i] = f(grid->position(i));
  sol.grid = std::move(grid);
  return sol;
}

bool ResidualField::all_admissible() const {
  return std::all_of(admissible.begin(), admissible.end(), [](char c) { return c != 0; });
}

namespace {

void check_heights(const GridSolution& sol) {
  if (!sol.grid) throw PreconditionError("solution has no grid");
  if (sol.u.size() != sol.grid->unknowns()) throw PreconditionError("height vector size mismatch");
  if (!(sol.eps_boundary > 0.0)) throw StateError("boundary height must be positive");
  if (sol.boundary_lift.size() != 0 && sol.boundary_lift.size() != sol.grid->boundary_points()) {
    throw PreconditionError("boundary lift size mismatch");
  }
  for (Eigen::Index i = 0; i < sol.u.size(); ++i) {
    if (!(sol.u[i] > 0.0)) throw StateError("height is not positive at an interior node");
  }
}

double target_s2(const GridSolution& sol) {
  return binomial(sol.spec.dim, 2) * sol.sigma * sol.sigma;
}

}  // namespace

ResidualField residual(const GridSolution& sol) {
  check_heights(sol);
  const Discretization& grid = *sol.grid;
  const double target = target_s2(sol);
  ResidualField out;
  out.values.resize(grid.unknowns());
  out.admissible.assign(grid.unknowns(), 0);
  for (int i = 0; i < grid.unknowns(); ++i) {
    const GraphFrame frame = build_frame(grid.jet(i, sol.u, sol.eps_boundary, &sol.boundary_lift));
    out.values[i] = s2(frame.kappa.values()) - target;
    out.admissible[i] = in_garding_cone(2, frame.kappa).member ? 1 : 0;
  }
  return out;
}

Eigen::SparseMatrix<double> jacobian(const GridSolution& sol) {
  check_heights(sol);
  const Discretization& grid = *sol.grid;
  const int n = grid.dim();
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
  std::vector<Eigen::Triplet<double>> trip;
  Eigen::VectorXd dcomp(grid.components());

  for (int i = 0; i < grid.unknowns(); ++i) {
    const CurvatureJet jet = grid.jet(i, sol.u, sol.eps_boundary, &sol.boundary_lift);
    const GraphFrame frame = build_frame(jet);
    const Eigen::MatrixXd& L = frame.chol_inv_metric;
    const Eigen::MatrixXd Fs = shape_operator_derivatives(frame.shape_sym);
    // dF/dA for A = L S L^{-1}.
    const Eigen::MatrixXd G =
        L.transpose().triangularView<Eigen::Upper>().solve(Fs * L.transpose());

    const double u = jet.u;
    const double w = frame.w;
    const Eigen::VectorXd& p = jet.du;
    const Eigen::MatrixXd& M = jet.d2u;
    const Eigen::MatrixXd P = I - p * p.transpose() / (w * w);
    const Eigen::MatrixXd& A = frame.shape;

    dcomp[0] = (G.array() * (P * M / w).array()).sum();
    for (int k = 0; k < n; ++k) {
      Eigen::MatrixXd dP = -(I.col(k) * p.transpose() + p * I.row(k)) / (w * w) +
                           2.0 * p[k] * p * p.transpose() / (w * w * w * w);
      Eigen::MatrixXd dA = -(p[k] / (w * w)) * A + (u / w) * dP * M;
      dcomp[1 + k] = (G.array() * dA.array()).sum();
    }
    const Eigen::MatrixXd UG = (u / w) * P.transpose() * G;  // d/dM of tr(G^T (u/w) P M)
    for (int k = 0; k < n; ++k) {
      for (int l = k; l < n; ++l) {
        dcomp[grid.hessian_component(k, l)] = k == l ? UG(k, k) : UG(k, l) + UG(l, k);
      }
    }
    for (const JetTerm& t : grid.terms(i)) {
      trip.emplace_back(i, t.col, dcomp[t.comp] * t.w);
    }
  }
  Eigen::SparseMatrix<double> J(grid.unknowns(), grid.unknowns());
  J.setFromTriplets(trip.begin(), trip.end());
  return J;
}

namespace {

Eigen::VectorXd linear_solve(const Eigen::SparseMatrix<double>& J, const Eigen::VectorXd& rhs,
                             int dim) {
  if (dim == 3) {
    Eigen::BiCGSTAB<Eigen::SparseMatrix<double>, Eigen::DiagonalPreconditioner<double>> it;
    it.setTolerance(1e-12);
    it.setMaxIterations(4000);
    it.compute(J);
    Eigen::VectorXd x = it.solve(rhs);
    if (it.info() == Eigen::Success && x.allFinite()) return x;
    // fall through to the direct solver on breakdown
  }
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(J);
  if (lu.info() != Eigen::Success) throw NumericError("sparse LU factorization failed");
  Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) throw NumericError("sparse LU solve failed");
  return x;
}

}  // namespace

StepDiagnostics newton_step(GridSolution& sol) {
  const ResidualField r0 = residual(sol);
  StepDiagnostics diag;
  diag.residual_before = r0.linf();
  Eigen::SparseMatrix<double> J = jacobian(sol);
  J.makeCompressed();
  const Eigen::VectorXd delta = linear_solve(J, -r0.values, sol.spec.dim);

  double alpha = 1.0;
  while (alpha >= kMinDamping) {
    GridSolution trial = sol;
    trial.u = sol.u + alpha * delta;
    if ((trial.u.array() > 0.0).all()) {
      const ResidualField rt = residual(trial);
      if (rt.all_admissible() && rt.linf() < diag.residual_before) {
        sol.u = std::move(trial.u);
        ++sol.newton_iters;
        diag.residual_after = rt.linf();
        diag.damping = alpha;
        return diag;
      }
    }
    alpha *= 0.5;
    ++diag.halvings;
  }
  throw StagnationError("Newton damping underflow");
}

std::vector<double> solve_stage(GridSolution& sol, const NewtonOptions& options) {
  sol.converged = false;
  std::vector<double> history{residual(sol).linf()};
  for (int it = 0; it < options.max_iterations && history.back() > options.tolerance; ++it) {
    history.push_back(newton_step(sol).residual_after);
  }
  if (history.back() > options.tolerance) {
    throw StagnationError("Newton iteration did not reach tolerance");
  }
  sol.converged = residual(sol).all_admissible();
  if (!sol.converged) throw StagnationError("converged state is not admissible");
  return history;
}

EstimateReport estimate_report(const GridSolution& sol, const lab::JacobiConstants& constants) {
  check_heights(sol);
  const Discretization& grid = *sol.grid;
  const double target = target_s2(sol);
  EstimateReport rep;
  rep.min_nu_up = std::numeric_limits<double>::infinity();
  rep.min_kappa = std::numeric_limits<double>::infinity();
  rep.max_S1_interior = -std::numeric_limits<double>::infinity();
  rep.max_S1_boundary_ring = -std::numeric_limits<double>::infinity();
  rep.q_max = -std::numeric_limits<double>::infinity();
  rep.residual_linf = 0.0;
  for (int i = 0; i < grid.unknowns(); ++i) {
    const GraphFrame frame = build_frame(grid.jet(i, sol.u, sol.eps_boundary, &sol.boundary_lift));
    const Eigen::VectorXd& k = frame.kappa.values();
    const double S1 = k.sum();
    rep.min_nu_up = std::min(rep.min_nu_up, frame.nu_up);
    rep.min_kappa = std::min(rep.min_kappa, k.minCoeff());
    rep.max_S1_interior = std::max(rep.max_S1_interior, S1);
    if (grid.ring(i)) rep.max_S1_boundary_ring = std::max(rep.max_S1_boundary_ring, S1);
    rep.residual_linf = std::max(rep.residual_linf, std::abs(s2(k) - target));
    const double q = std::log(S1) - constants.N * std::log(frame.nu_up);
    if (q > rep.q_max) {
      rep.q_max = q;
      rep.q_argmax_on_boundary = grid.ring(i);
      rep.q_argmax_point = grid.position(i);
    }
  }
  rep.ratio = rep.max_S1_interior / (1.0 + rep.max_S1_boundary_ring);
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

struct Stage {
  double sigma;
  double eps;
  double lift;
};

class Continuation {
 public:
  // `base_lift` holds boundary values, `interior_lift` the same smooth
  // function at the unknowns.
  Continuation(GridSolution start, Eigen::VectorXd base_lift, Eigen::VectorXd interior_lift,
               const ContinuationOptions& options)
      : options_(options),
        constants_(lab::jacobi_constants(start.spec.dim, start.sigma, options.N)),
        base_lift_(std::move(base_lift)),
        interior_lift_(std::move(interior_lift)) {
    result_.solution = std::move(start);
  }

  void first(const Stage& s) {
    GridSolution& sol = result_.solution;
    apply(sol, s);
    try {
      record(sol, s, solve_stage(sol, options_.newton));
    } catch (const StagnationError& e) {
      throw ContinuationStagnation(std::string("initial stage failed: ") + e.what(), result_);
    }
    at_ = s;
  }

  void advance(const Stage& to, int depth = 0) {
    GridSolution trial = result_.solution;
    trial.u.array() -= at_.eps - to.eps;
    if (at_.lift != to.lift) trial.u -= (at_.lift - to.lift) * interior_lift_;
    trial.u = trial.u.cwiseMax(to.eps);
    apply(trial, to);
    try {
      record(trial, to, solve_stage(trial, options_.newton));
      result_.solution = std::move(trial);
      at_ = to;
      return;
    } catch (const StagnationError&) {
    } catch (const StateError&) {
    } catch (const NumericError&) {
    }
    if (depth >= 2) {
      throw ContinuationStagnation("stage sigma=" + std::to_string(to.sigma) +
                                       " eps=" + std::to_string(to.eps) +
                                       " stagnated after bisection",
                                   result_);
    }
    const Stage mid{0.5 * (at_.sigma + to.sigma), std::sqrt(at_.eps * to.eps),
                    0.5 * (at_.lift + to.lift)};
    advance(mid, depth + 1);
    advance(to, depth + 1);
  }

  ContinuationResult take() { return std::move(result_); }

 private:
  void apply(GridSolution& sol, const Stage& s) const {
    sol.sigma = s.sigma;
    sol.eps_boundary = s.eps;
    if (s.lift > 0.0) {
      sol.boundary_lift = s.lift * base_lift_;
    } else {
      sol.boundary_lift.resize(0);
    }
  }

  void record(const GridSolution& sol, const Stage& s, std::vector<double> history) {
    StageRecord rec;
    rec.sigma = s.sigma;
    rec.eps = s.eps;
    rec.lift = s.lift;
    rec.iterations = static_cast<int>(history.size()) - 1;
    rec.residual_history = std::move(history);
    lab::JacobiConstants c = constants_;
    c.sigma = sol.sigma;
    rec.report = estimate_report(sol, c);
    result_.stages.push_back(std::move(rec));
  }

  ContinuationOptions options_;
  lab::JacobiConstants constants_;
  Eigen::VectorXd base_lift_;
  Eigen::VectorXd interior_lift_;
  ContinuationResult result_;
  Stage at_{0.0, 0.0, 0.0};
};

}  // namespace

ContinuationResult continuation_solve(const DomainSpec& spec, double sigma_target,
                                      const std::vector<double>& eps_schedule,
                                      const ContinuationOptions& options) {
  if (!(sigma_target > 0.0 && sigma_target < 1.0)) throw DomainError("sigma must lie in (0,1)");
  spec.validate();
  if (eps_schedule.empty()) throw PreconditionError("eps schedule is empty");
  for (std::size_t j = 0; j < eps_schedule.size(); ++j) {
    if (!(eps_schedule[j] > 0.0)) throw PreconditionError("eps schedule must be positive");
    if (j > 0 && !(eps_schedule[j] < eps_schedule[j - 1])) {
      throw PreconditionError("eps schedule must be strictly decreasing");
    }
  }
  if (!(options.sigma_step > 0.0)) throw PreconditionError("sigma step must be positive");

  auto grid = std::make_shared<const Discretization>(spec, options.resolution);
  if (grid->unknowns() == 0) throw PreconditionError("degenerate discretization: no interior nodes");

  const double sigma0 = std::max(options.sigma_start, sigma_target);
  const double eps0 = eps_schedule.front();
  const CapProfile cap = exact_cap_through(spec.circumscribed_radius(), sigma0, eps0);
  const Eigen::VectorXd center = spec.center;
  auto cap_height_at = [&](const Eigen::VectorXd& x) {
    return std::max(cap.height((x - center).norm()), eps0);
  };
  GridSolution start = sample_solution(grid, sigma0, eps0, cap_height_at);

  // Away from the circumscribed sphere the cap sits above eps on the
  // boundary. Start from the cap's own boundary values and lower them.
  Eigen::VectorXd lift(grid->boundary_points());
  for (int b = 0; b < grid->boundary_points(); ++b) {
    lift[b] = cap_height_at(grid->boundary_point(b)) - eps0;
  }
  const bool lifted = lift.size() > 0 && lift.maxCoeff() > 1e-3 * eps0;
  const Eigen::VectorXd interior_lift = start.u.array() - eps0;

  Continuation run(std::move(start), lifted ? lift : Eigen::VectorXd(),
                   lifted ? interior_lift : Eigen::VectorXd(), options);
  run.first({sigma0, eps0, lifted ? 1.0 : 0.0});
  if (lifted) {
    for (int s = 1; s <= options.lift_steps; ++s) {
      run.advance({sigma0, eps0, 1.0 - static_cast<double>(s) / options.lift_steps});
    }
  }
  const int steps =
      static_cast<int>(std::ceil((sigma0 - sigma_target) / options.sigma_step - 1e-12));
  for (int s = 1; s <= steps; ++s) {
    const double sigma =
        s == steps ? sigma_target : sigma0 - (sigma0 - sigma_target) * s / steps;
    run.advance({sigma, eps0, 0.0});
  }
  for (std::size_t j = 1; j < eps_schedule.size(); ++j) {
    run.advance({sigma_target, eps_schedule[j], 0.0});
  }
  return run.take();
}

}  // namespace plateau
