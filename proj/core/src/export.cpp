#include "plateau/export.hpp"

#include "plateau/errors.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace plateau {

using nlohmann::json;

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

json vec_json(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

json estimate_json(const EstimateReport& r) {
  json j;
  j["min_nu_up"] = r.min_nu_up;
  j["min_kappa"] = r.min_kappa;
  j["max_S1_interior"] = r.max_S1_interior;
  j["max_S1_boundary_ring"] = r.max_S1_boundary_ring;
  j["ratio"] = r.ratio;
  j["q_argmax_location"] = r.q_argmax_location();
  j["q_argmax_point"] = vec_json(r.q_argmax_point);
  j["q_max"] = r.q_max;
  j["residual_linf"] = r.residual_linf;
  return j;
}

void ensure_nonempty(const GridSolution& sol) {
  if (!sol.grid || sol.grid->unknowns() == 0) {
    throw PreconditionError("degenerate discretization: no interior grid nodes");
  }
}

}  // namespace

std::string solution_csv(const GridSolution& sol) {
  ensure_nonempty(sol);
  const Discretization& grid = *sol.grid;
  std::string out;
  for (int k = 0; k < grid.dim(); ++k) out += "x" + std::to_string(k + 1) + ",";
  out += "u,kappa_min,kappa_max,S1,nu_up\n";
  for (int i = 0; i < grid.unknowns(); ++i) {
    const GraphFrame f = build_frame(grid.jet(i, sol.u, sol.eps_boundary, &sol.boundary_lift));
    const Eigen::VectorXd& k = f.kappa.values();
    const Eigen::VectorXd& x = grid.position(i);
    for (int c = 0; c < grid.dim(); ++c) out += fmt(x[c]) + ",";
    out += fmt(sol.u[i]) + "," + fmt(k.minCoeff()) + "," + fmt(k.maxCoeff()) + "," +
           fmt(k.sum()) + "," + fmt(f.nu_up) + "\n";
  }
  return out;
}

std::string report_json(const GridSolution& sol, const EstimateReport& report,
                        const ExportMeta& meta) {
  json j;
  j["status"] = meta.status;
  j["sigma"] = sol.sigma;
  j["eps_boundary"] = sol.eps_boundary;
  j["h_grid"] = sol.h_grid;
  j["unknowns"] = sol.grid ? sol.grid->unknowns() : 0;
  j["converged"] = sol.converged;
  j["newton_iters"] = sol.newton_iters;
  j["estimate"] = estimate_json(report);
  json stages = json::array();
  for (const StageRecord& s : meta.stages) {
    json st;
    st["sigma"] = s.sigma;
    st["eps"] = s.eps;
    st["boundary_lift"] = s.lift;
    st["iterations"] = s.iterations;
    st["residual_history"] = s.residual_history;
    st["estimate"] = estimate_json(s.report);
    stages.push_back(std::move(st));
  }
  j["stages"] = std::move(stages);
  return j.dump(2) + "\n";
}

std::string run_id(const std::string& config_json) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : config_json) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void export_solution(const GridSolution& sol, const EstimateReport& report,
                     const std::filesystem::path& dir, const ExportMeta& meta) {
  ensure_nonempty(sol);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

  write_text_file(dir / "solution.csv", solution_csv(sol));
  write_text_file(dir / "report.json", report_json(sol, report, meta));

  json m;
  m["run_id"] = run_id(meta.config_json);
  if (!meta.config_json.empty()) {
    m["config"] = json::parse(meta.config_json, nullptr, false);
  }
  m["status"] = meta.status;
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm utc{};
  gmtime_r(&t, &utc);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
  m["wall_clock"] = stamp;
  write_text_file(dir / "meta.json", m.dump(2) + "\n");
}

std::string summarize_run(const std::filesystem::path& dir) {
  const json r = json::parse(read_text_file(dir / "report.json"), nullptr, false);
  if (r.is_discarded() || !r.is_object()) {
    throw std::runtime_error("malformed " + (dir / "report.json").string());
  }
  std::ostringstream out;
  if (std::filesystem::exists(dir / "meta.json")) {
    const json m = json::parse(read_text_file(dir / "meta.json"), nullptr, false);
    if (m.is_object() && m.contains("run_id")) {
      out << "run " << m["run_id"].get<std::string>();
      if (m.contains("wall_clock")) out << "  (" << m["wall_clock"].get<std::string>() << ")";
      out << "\n";
    }
  }
  out << "status " << r.value("status", "?") << ", sigma " << fmt(r.value("sigma", 0.0))
      << ", eps " << fmt(r.value("eps_boundary", 0.0)) << ", h " << fmt(r.value("h_grid", 0.0))
      << ", unknowns " << r.value("unknowns", 0) << "\n";
  char line[256];
  std::snprintf(line, sizeof line, "%8s %10s %5s %12s %12s %10s %10s %s\n", "sigma", "eps",
                "iters", "min_nu_up", "min_kappa", "ratio", "residual", "q_argmax");
  out << line;
  for (const json& s : r.value("stages", json::array())) {
    const json& e = s["estimate"];
    std::snprintf(line, sizeof line, "%8.4f %10.4g %5d %12.6f %12.6f %10.6f %10.2e %s\n",
                  s.value("sigma", 0.0), s.value("eps", 0.0), s.value("iterations", 0),
                  e.value("min_nu_up", 0.0), e.value("min_kappa", 0.0), e.value("ratio", 0.0),
                  e.value("residual_linf", 0.0), e.value("q_argmax_location", "?").c_str());
    out << line;
  }
  return out.str();
}

}  // namespace plateau
