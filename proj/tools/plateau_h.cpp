// plateau-h: solve, verify, cap and report front end.

#include "plateau/config.hpp"
#include "plateau/errors.hpp"
#include "plateau/export.hpp"
#include "plateau/solver.hpp"
#include "plateau/verify.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kStagnation = 3, kCertificate = 4 };

int env_threads() {
  const char* v = std::getenv("PLATEAU_H_THREADS");
  if (!v || !*v) return 0;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 0) {
    std::cerr << "warning: ignoring PLATEAU_H_THREADS=" << v << "\n";
    return 0;
  }
  return static_cast<int>(n);
}

int run_solve(const std::string& config_path, const std::string& out_override) {
  using namespace plateau;
  RunConfig config = load_config(config_path);
  config.mode = RunMode::solve;
  if (!out_override.empty()) config.output_dir = out_override;

  ContinuationOptions opt;
  opt.resolution = config.grid_resolution;
  opt.N = config.N;
  const lab::JacobiConstants constants =
      lab::jacobi_constants(config.domain.dim, config.sigma, config.N);

  ExportMeta meta;
  meta.config_json = serialize_config(config);
  try {
    ContinuationResult res = continuation_solve(config.domain, config.sigma, config.eps_schedule, opt);
    meta.stages = res.stages;
    const EstimateReport rep = estimate_report(res.solution, constants);
    export_solution(res.solution, rep, config.output_dir, meta);
    std::cout << summarize_run(config.output_dir);
    return kOk;
  } catch (const ContinuationStagnation& e) {
    std::cerr << "stagnation: " << e.what() << "\n";
    const ContinuationResult& part = e.partial();
    if (!part.stages.empty()) {
      meta.stages = part.stages;
      meta.status = "partial";
      export_solution(part.solution, part.stages.back().report, config.output_dir, meta);
      std::cerr << "last converged stage written to " << config.output_dir << "\n";
    }
    return kStagnation;
  }
}

int run_verify_cmd(const std::string& config_path, const std::string& out_override) {
  using namespace plateau;
  RunConfig config = load_config(config_path);
  config.mode = RunMode::verify;
  if (!out_override.empty()) config.output_dir = out_override;
  const VerifyOutcome out = run_verify(config, env_threads());
  int failed = 0;
  for (const auto& r : out.suite.records) {
    if (r.pass || r.informational) continue;
    ++failed;
    std::printf("FAIL %-28s n=%-3d min_margin=%.6g\n", r.name.c_str(), r.n, r.min_margin);
  }
  std::printf("%zu certificates, %d failing; report in %s/verify.json\n", out.suite.records.size(),
              failed, config.output_dir.c_str());
  return out.pass ? kOk : kCertificate;
}

int run_cap(double radius, double sigma, double eps) {
  const plateau::CapProfile cap =
      eps > 0.0 ? plateau::exact_cap_through(radius, sigma, eps) : plateau::exact_cap(radius, sigma);
  std::printf("rho         %.15g\n", cap.rho);
  std::printf("c           %.15g\n", cap.c);
  std::printf("u(0)        %.15g\n", cap.height(0.0));
  std::printf("u(radius)   %.15g\n", cap.height(radius));
  std::printf("zero radius %.15g\n", cap.base_radius);
  std::printf("min nu_up   %.15g\n", cap.c / cap.rho + (eps > 0.0 ? eps / cap.rho : 0.0));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"plateau-h: hyperbolic sigma_2 graph solver and inequality certificates"};
  app.require_subcommand(1);

  std::string config_path, out_dir, run_dir;
  double radius = 1.0, sigma = 0.6, eps = 0.0;

  auto* solve = app.add_subcommand("solve", "continuation solve on a grid");
  solve->add_option("-c,--config", config_path, "JSON run configuration")->required();
  solve->add_option("-o,--output", out_dir, "override output_dir");

  auto* verify = app.add_subcommand("verify", "run the inequality certificates");
  verify->add_option("-c,--config", config_path, "JSON run configuration")->required();
  verify->add_option("-o,--output", out_dir, "override output_dir");

  auto* cap = app.add_subcommand("cap", "print the closed-form equidistant cap");
  cap->add_option("--radius", radius, "base radius")->check(CLI::PositiveNumber);
  cap->add_option("--sigma", sigma, "curvature in (0,1)");
  cap->add_option("--eps", eps, "rim height (0 = cap vanishing on the rim)");

  auto* report = app.add_subcommand("report", "summarize an exported run directory");
  report->add_option("run-dir", run_dir, "directory written by solve")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    if (*solve) return run_solve(config_path, out_dir);
    if (*verify) return run_verify_cmd(config_path, out_dir);
    if (*cap) return run_cap(radius, sigma, eps);
    if (*report) {
      std::cout << plateau::summarize_run(run_dir);
      return kOk;
    }
  } catch (const plateau::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const plateau::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const plateau::StagnationError& e) {
    std::cerr << "stagnation: " << e.what() << "\n";
    return kStagnation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
