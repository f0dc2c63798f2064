// Acceptance suite: one PASS/FAIL line per criterion. Tolerances are pinned
// here and nowhere else.

#include "plateau/certificates.hpp"
#include "plateau/graphgeom.hpp"
#include "plateau/inequality_lab.hpp"
#include "plateau/solver.hpp"

#include "oracles.hpp"

#include <CLI11.hpp>
#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace lab = plateau::lab;
using plateau::DomainSpec;

namespace {

// C1
constexpr int kC1MaxIterations = 15;
constexpr double kC1MaxError64 = 5e-3;
constexpr double kC1MinErrorRatio = 3.5;
constexpr double kC1Seconds = 60.0;
constexpr double kC1Sigma = 0.6;
// C2
constexpr int kC2CapPoints = 1000;
constexpr double kC2CapTol = 1e-12;
constexpr int kC2Jets = 10000;
constexpr double kC2RelationTol = 1e-9;
constexpr double kC2Seconds = 5.0;
// C3
constexpr std::int64_t kC3Samples = 100000;
constexpr double kC3Seconds = 30.0;
// C4
constexpr std::int64_t kC4Samples = 100000;
constexpr double kC4Tolerance = 1e-10;
constexpr double kC4FaultScale = 1.5;
constexpr double kC4Seconds = 60.0;
// C5
constexpr double kC5ExactTol = 1e-15;
constexpr double kC5CompanionTol = 1e-14;
constexpr std::int64_t kC5SweepMaxN = 1000000;
constexpr double kC5Seconds = 10.0;
// C6
constexpr double kC6NuSlack = 1e-3;
constexpr double kC6MaxVariation = 0.10;
constexpr double kC6MaxRatio = 2.0;
constexpr double kC6Seconds = 300.0;
// C7
constexpr int kC7States = 20;
constexpr int kC7Resolution = 12;
constexpr double kC7FdStep = 1e-6;
constexpr double kC7RelTol = 1e-5;
constexpr double kC7Seconds = 30.0;

constexpr std::uint64_t kSeed = 20240601;
const std::vector<int> kDims{2, 3, 4, 5, 6, 7, 8};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool report(int k, bool pass, const std::string& what, double secs) {
  std::printf("%s C%d %s [%.2f s]\n", pass ? "PASS" : "FAIL", k, what.c_str(), secs);
  std::fflush(stdout);
  return pass;
}

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double max_cap_error(const plateau::GridSolution& s, const plateau::CapProfile& cap) {
  double e = 0.0;
  for (int i = 0; i < s.grid->unknowns(); ++i)
    e = std::max(e, std::abs(s.u[i] - cap.height(s.grid->position(i).norm())));
  return e;
}

// ---------------------------------------------------------------------------

bool criterion1() {
  const auto t0 = Clock::now();
  const std::vector<double> eps{0.1, 0.03, 0.01};
  int worst_iters = 0;
  double err[2] = {0.0, 0.0};
  const int res[2] = {64, 128};
  for (int r = 0; r < 2; ++r) {
    plateau::ContinuationOptions o;
    o.resolution = res[r];
    const auto out = plateau::continuation_solve(DomainSpec::ball(2, 1.0), kC1Sigma, eps, o);
    for (const auto& st : out.stages) worst_iters = std::max(worst_iters, st.iterations);
    err[r] = max_cap_error(out.solution, plateau::exact_cap_through(1.0, kC1Sigma, eps.back()));
    std::printf("  h=1/%d  max|u - cap| = %.3e  stages=%zu\n", res[r], err[r], out.stages.size());
  }
  const double ratio = err[0] / err[1];
  const double secs = seconds_since(t0);
  const bool pass = worst_iters <= kC1MaxIterations && err[0] <= kC1MaxError64 &&
                    ratio >= kC1MinErrorRatio && secs <= kC1Seconds;
  return report(1, pass,
                "ball solver: max Newton iters " + std::to_string(worst_iters) +
                    ", error(1/64) " + fmt("%.3e", err[0]) + ", ratio " + fmt("%.2f", ratio),
                secs);
}

bool criterion2() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double cap_dev = 0.0;
  for (int t = 0; t < kC2CapPoints; ++t) {
    const double sigma = 0.05 + 0.9 * u01(rng);
    const double R = 0.2 + 3.0 * u01(rng);
    const int n = 2 + t % 2;
    const auto cap = plateau::exact_cap(R, sigma);
    Eigen::VectorXd x = oracle::gaussian(rng, n);
    x *= 0.999 * R * std::pow(u01(rng), 1.0 / n) / x.norm();
    const auto f = plateau::build_frame(cap.jet(x));
    cap_dev = std::max(cap_dev, (f.kappa.values().array() - sigma).abs().maxCoeff());
  }
  double rel_dev = 0.0;
  for (int t = 0; t < kC2Jets; ++t) {
    const int n = 2 + t % 3;
    const plateau::CurvatureJet jet(0.05 + 3.0 * u01(rng), 0.8 * oracle::gaussian(rng, n),
                                    oracle::random_symmetric(rng, n, 1.5));
    const auto f = plateau::build_frame(jet);
    Eigen::VectorXd rhs = (jet.u * f.kappa_tilde.values().array() + f.nu_up).matrix();
    std::sort(rhs.data(), rhs.data() + n, std::greater<double>());
    const double scale = 1.0 + f.kappa.values().cwiseAbs().maxCoeff();
    rel_dev = std::max(rel_dev, (f.kappa.values() - rhs).lpNorm<Eigen::Infinity>() / scale);
  }
  const double secs = seconds_since(t0);
  const bool pass = cap_dev <= kC2CapTol && rel_dev <= kC2RelationTol && secs <= kC2Seconds;
  return report(2, pass,
                "graph geometry: cap |kappa - sigma| " + fmt("%.2e", cap_dev) +
                    ", relation deviation " + fmt("%.2e", rel_dev),
                secs);
}

bool criterion3() {
  const auto t0 = Clock::now();
  bool pass = true;
  for (int n : kDims) {
    const auto s1 = lab::certify_sharp1(n, kC3Samples, kSeed);
    const auto tr = lab::certify_sharp1_trend(n, kC3Samples, kSeed);
    double s2min = INFINITY;
    bool s2pass = true;
    for (const auto& r : lab::certify_sharp2(n, kC3Samples, kSeed)) {
      if (r.informational) continue;
      s2min = std::min(s2min, r.min_margin);
      s2pass = s2pass && r.pass;
    }
    std::printf("  n=%d sharp1 min %.3e  trend margin %.2f  sharp2 min %.3e\n", n,
                s1.min_margin, tr.min_margin, s2min);
    pass = pass && s1.pass && tr.pass && s2pass;
  }
  const double secs = seconds_since(t0);
  pass = pass && secs <= kC3Seconds;
  return report(3, pass, "sharp bounds: no violations in 1e5 samples per n = 2..8, trend ok", secs);
}

bool criterion4() {
  const auto t0 = Clock::now();
  bool genuine = true;
  bool fault = false;
  for (int n : kDims) {
    const auto g = lab::certify_qform(n, kC4Samples, kSeed);
    const auto f = lab::certify_qform(n, kC4Samples, kSeed, kC4FaultScale);
    std::printf("  n=%d  min Q %.4e   min Q (eps x%.1f) %.4e\n", n, g.min_margin, kC4FaultScale,
                f.min_margin);
    genuine = genuine && g.min_margin >= -kC4Tolerance;
    fault = fault || f.min_margin < 0.0;
  }
  const double secs = seconds_since(t0);
  std::printf("  genuine form nonnegative: %s   fault injection detected: %s\n",
              genuine ? "yes" : "NO", fault ? "yes" : "NO");
  return report(4, genuine && fault && secs <= kC4Seconds,
                "almost-Jacobi form on Df-perp with fault injection", secs);
}

bool criterion5() {
  const auto t0 = Clock::now();
  const double N = lab::default_N();
  const auto c4 = lab::jacobi_constants(4, 0.6);
  const bool exact = std::abs(c4.alpha - 2.0 / 9.0) <= kC5ExactTol &&
                     std::abs(c4.beta - 0.5) <= kC5ExactTol;
  const double companion = 1.0 - lab::a0() * N;
  bool sweeps = true;
  for (const auto& r : lab::certify_constant_sweeps(kC5SweepMaxN, N)) {
    if (r.informational) continue;
    if (!r.pass) std::printf("  sweep %s failed at n=%d (margin %.3e)\n", r.name.c_str(), r.n, r.min_margin);
    sweeps = sweeps && r.pass;
  }
  for (const auto& r : lab::certify_claim1_quadratic(0.6, N)) sweeps = sweeps && (r.informational || r.pass);
  const double thr = lab::claim2_certificate(4, N).threshold;
  char two_sig[16], expect[16];
  std::snprintf(two_sig, sizeof two_sig, "%.2g", thr);
  std::snprintf(expect, sizeof expect, "%.2g", 0.0566);
  const bool thr_ok = std::string(two_sig) == expect;
  std::printf("  alpha_4 %.17g  beta_4 %.17g  1 - a0 N %.2e  2/(N(N-1)) %.6f\n", c4.alpha, c4.beta,
              companion, thr);
  const double secs = seconds_since(t0);
  const bool pass = exact && std::abs(companion) <= kC5CompanionTol && sweeps && thr_ok &&
                    secs <= kC5Seconds;
  return report(5, pass, "constants and sweeps to n = 1e6", secs);
}

struct C6Case {
  const char* label;
  DomainSpec spec;
  double sigma;
  int resolution;
  std::vector<double> eps;
};

bool criterion6() {
  const auto t0 = Clock::now();
  const std::vector<C6Case> cases{
      {"ball2", DomainSpec::ball(2, 1.0), 0.6, 64, {0.1, 0.03, 0.01, 0.003}},
      {"ellipse", DomainSpec::ellipse(Eigen::Vector2d(1.0, 0.7)), 0.4, 64, {0.1, 0.03, 0.01, 0.003}},
      {"ball3", DomainSpec::ball(3, 1.0), 0.6, 16, {0.1, 0.03, 0.01}},
  };
  bool pass = true;
  for (const auto& c : cases) {
    plateau::ContinuationOptions o;
    o.resolution = c.resolution;
    const auto out = plateau::continuation_solve(c.spec, c.sigma, c.eps, o);
    double min_nu = INFINITY, max_ratio = 0.0, cmin = INFINITY, cmax = -INFINITY, cabs = 0.0;
    for (const auto& st : out.stages) {
      if (st.sigma != c.sigma || st.lift != 0.0) continue;
      const auto& r = st.report;
      min_nu = std::min(min_nu, r.min_nu_up);
      max_ratio = std::max(max_ratio, r.ratio);
      const double ce = -r.min_kappa;
      cmin = std::min(cmin, ce);
      cmax = std::max(cmax, ce);
      cabs = std::max(cabs, std::abs(ce));
      std::printf("  %-7s eps=%-6g min nu %.5f  ratio %.3f  C_emp %.4f  q argmax %s\n", c.label,
                  st.eps, r.min_nu_up, r.ratio, ce, r.q_argmax_location().c_str());
    }
    const double variation = cabs > 0.0 ? (cmax - cmin) / cabs : 0.0;
    const bool ok = min_nu >= c.sigma - kC6NuSlack && variation <= kC6MaxVariation &&
                    max_ratio < kC6MaxRatio;
    std::printf("  %-7s %s (min nu %.5f, C_emp variation %.3f, max ratio %.3f)\n", c.label,
                ok ? "ok" : "violated", min_nu, variation, max_ratio);
    pass = pass && ok;
  }
  const double secs = seconds_since(t0);
  return report(6, pass && secs <= kC6Seconds, "estimate sweep on ball, ellipse and 3-ball", secs);
}

bool criterion7() {
  const auto t0 = Clock::now();
  auto grid = std::make_shared<const plateau::Discretization>(DomainSpec::ball(2, 1.0), kC7Resolution);
  std::mt19937_64 rng(kSeed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  double worst = 0.0;
  int made = 0, drawn = 0;
  while (made < kC7States) {
    ++drawn;
    const double sigma = 0.3 + 0.6 * u01(rng);
    const double eps = 0.02 + 0.2 * u01(rng);
    const auto cap = plateau::exact_cap_through(1.0, sigma, eps);
    const double a = 0.05 * (u01(rng) - 0.5), b = 0.05 * (u01(rng) - 0.5);
    const double fx = 1.0 + 2.0 * u01(rng), fy = 1.0 + 2.0 * u01(rng), ph = 6.3 * u01(rng);
    auto s = plateau::sample_solution(grid, sigma, eps, [&](const Eigen::VectorXd& x) {
      const double bump = a * std::sin(fx * x[0] + ph) * std::cos(fy * x[1]) + b * x[0] * x[1];
      return cap.height(x.norm()) + bump * (1.0 - x.squaredNorm());
    });
    if (s.u.minCoeff() <= 0.0 || !plateau::residual(s).all_admissible()) continue;
    ++made;
    const Eigen::MatrixXd J(plateau::jacobian(s));
    Eigen::MatrixXd fd(J.rows(), J.cols());
    for (int col = 0; col < J.cols(); ++col) {
      auto p = s, q = s;
      p.u[col] += kC7FdStep;
      q.u[col] -= kC7FdStep;
      fd.col(col) = (plateau::residual(p).values - plateau::residual(q).values) / (2.0 * kC7FdStep);
    }
    worst = std::max(worst, (J - fd).norm() / fd.norm());
  }
  const double secs = seconds_since(t0);
  std::printf("  %d admissible states (%d drawn), %d unknowns\n", made, drawn, grid->unknowns());
  return report(7, worst <= kC7RelTol && secs <= kC7Seconds,
                "Jacobian vs central differences, worst relative error " + fmt("%.2e", worst), secs);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plateau-h acceptance suite"};
  int which = 0;
  app.add_option("--criterion", which, "run a single criterion (1-7); default all")
      ->check(CLI::Range(0, 7));
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<bool()>> all{criterion1, criterion2, criterion3, criterion4,
                                               criterion5, criterion6, criterion7};
  bool ok = true;
  for (int k = 1; k <= 7; ++k) {
    if (which != 0 && which != k) continue;
    try {
      ok = all[k - 1]() && ok;
    } catch (const std::exception& e) {
      report(k, false, std::string("threw: ") + e.what(), 0.0);
      ok = false;
    }
  }
  return ok ? 0 : 1;
}
