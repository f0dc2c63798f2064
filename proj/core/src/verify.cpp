#include "plateau/verify.hpp"

#include "plateau/export.hpp"

#include <json.hpp>

#include <filesystem>

namespace plateau {

using nlohmann::json;

lab::SweepOptions sweep_options(const RunConfig& c, int threads) {
  lab::SweepOptions o;
  o.seed = c.seed;
  o.samples = c.n_samples;
  o.dims = c.dims_to_sweep;
  o.sigma = c.sigma;
  o.N = c.N;
  o.fault_eps_scale = c.fault_eps_scale;
  o.threads = threads;
  return o;
}

std::string verify_report_json(const lab::CertificateSuite& suite, const RunConfig& c) {
  json j;
  j["seed"] = c.seed;
  j["n_samples"] = c.n_samples;
  j["dims_to_sweep"] = c.dims_to_sweep;
  j["sigma"] = c.sigma;
  j["N"] = c.N;
  j["fault_eps_scale"] = c.fault_eps_scale;
  j["pass"] = suite.all_pass();

  json records = json::array();
  json failing = json::array();
  for (const lab::CertificateRecord& r : suite.records) {
    json e;
    e["name"] = r.name;
    e["n"] = r.n;
    e["samples"] = r.samples;
    e["min_margin"] = r.min_margin;
    e["seed"] = r.seed;
    e["strict"] = r.strict;
    e["informational"] = r.informational;
    e["pass"] = r.pass;
    if (!r.detail.empty()) e["detail"] = r.detail;
    if (r.witness) {
      json w;
      w["kappa"] = r.witness->kappa;
      w["index"] = r.witness->index;
      if (!r.witness->t.empty()) w["t"] = r.witness->t;
      w["delta"] = r.witness->delta;
      w["value"] = r.witness->value;
      e["witness"] = std::move(w);
    }
    if (!r.pass && !r.informational) failing.push_back(r.name + "/n=" + std::to_string(r.n));
    records.push_back(std::move(e));
  }
  j["failing"] = std::move(failing);
  j["certificates"] = std::move(records);

  json constants = json::object();
  for (const auto& [n, ab] : suite.constants) {
    constants[std::to_string(n)] = {{"alpha", ab.first}, {"beta", ab.second}};
  }
  j["constants"] = std::move(constants);
  return j.dump(2) + "\n";
}

VerifyOutcome run_verify(const RunConfig& config, int threads) {
  VerifyOutcome out;
  out.suite = lab::run_certificates(sweep_options(config, threads));
  out.pass = out.suite.all_pass();
  out.json = verify_report_json(out.suite, config);
  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());
  write_text_file(dir / "verify.json", out.json);
  return out;
}

}  // namespace plateau
