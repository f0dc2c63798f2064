#include "plateau/config.hpp"

#include "plateau/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace plateau {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {
    "mode", "domain", "sigma", "eps_schedule", "grid_resolution", "seed", "output_dir",
    "n_samples", "dims_to_sweep", "N", "fault_eps_scale"};
const std::set<std::string> kDomainKeys = {
    "shape", "dimension", "radius", "semi_axes", "r_in", "r_out", "center",
    "allow_non_mean_convex"};

void reject_unknown(const json& obj, const std::set<std::string>& keys, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!keys.count(it.key())) {
      throw ConfigError(path.empty() ? it.key() : path + "." + it.key(), "unknown field");
    }
  }
}

double get_real(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(path, "expected a finite number");
  return x;
}

std::int64_t get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  return v.get<std::int64_t>();
}

std::vector<double> get_reals(const json& v, const std::string& path) {
  if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_real(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

DomainSpec parse_domain(const json& d) {
  if (!d.is_object()) throw ConfigError("domain", "expected an object");
  reject_unknown(d, kDomainKeys, "domain");
  if (!d.contains("shape")) throw ConfigError("domain.shape", "missing field");
  if (!d["shape"].is_string()) throw ConfigError("domain.shape", "expected a string");
  const auto shape = parse_shape(d["shape"].get<std::string>());
  if (!shape) throw ConfigError("domain.shape", "must be one of ball, ellipse, annulus");

  DomainSpec spec;
  spec.shape = *shape;
  if (d.contains("allow_non_mean_convex")) {
    if (!d["allow_non_mean_convex"].is_boolean()) {
      throw ConfigError("domain.allow_non_mean_convex", "expected a boolean");
    }
    spec.allow_non_mean_convex = d["allow_non_mean_convex"].get<bool>();
  }
  int dim = 2;
  if (spec.shape == DomainShape::ellipse) {
    if (!d.contains("semi_axes")) throw ConfigError("domain.semi_axes", "missing field");
    spec.semi_axes = to_vector(get_reals(d["semi_axes"], "domain.semi_axes"));
    dim = static_cast<int>(spec.semi_axes.size());
  }
  if (d.contains("dimension")) {
    const auto given = get_int(d["dimension"], "domain.dimension");
    if (given != 2 && given != 3) throw ConfigError("domain.dimension", "must be 2 or 3");
    if (spec.shape == DomainShape::ellipse && given != dim) {
      throw ConfigError("domain.dimension", "does not match the number of semi-axes");
    }
    dim = static_cast<int>(given);
  }
  if (dim != 2 && dim != 3) throw ConfigError("domain.semi_axes", "need 2 or 3 semi-axes");
  spec.dim = dim;

  switch (spec.shape) {
    case DomainShape::ball:
      if (!d.contains("radius")) throw ConfigError("domain.radius", "missing field");
      spec.radius = get_real(d["radius"], "domain.radius");
      if (!(spec.radius > 0.0)) throw ConfigError("domain.radius", "must be positive");
      break;
    case DomainShape::ellipse:
      if (!(spec.semi_axes.minCoeff() > 0.0)) {
        throw ConfigError("domain.semi_axes", "must be positive");
      }
      break;
    case DomainShape::annulus:
      if (!d.contains("r_in")) throw ConfigError("domain.r_in", "missing field");
      if (!d.contains("r_out")) throw ConfigError("domain.r_out", "missing field");
      spec.r_in = get_real(d["r_in"], "domain.r_in");
      spec.r_out = get_real(d["r_out"], "domain.r_out");
      if (!(spec.r_in > 0.0)) throw ConfigError("domain.r_in", "must be positive");
      if (!(spec.r_out > spec.r_in)) throw ConfigError("domain.r_out", "must exceed r_in");
      break;
  }
  spec.center = Eigen::VectorXd::Zero(dim);
  if (d.contains("center")) {
    const auto c = get_reals(d["center"], "domain.center");
    if (static_cast<int>(c.size()) != dim) {
      throw ConfigError("domain.center", "must have one entry per dimension");
    }
    spec.center = to_vector(c);
  }
  try {
    spec.validate();
  } catch (const DomainError& e) {
    throw ConfigError("domain", e.what());
  }
  return spec;
}

json domain_json(const DomainSpec& s) {
  json d;
  d["shape"] = to_string(s.shape);
  d["dimension"] = s.dim;
  switch (s.shape) {
    case DomainShape::ball: d["radius"] = s.radius; break;
    case DomainShape::ellipse:
      d["semi_axes"] = std::vector<double>(s.semi_axes.data(), s.semi_axes.data() + s.semi_axes.size());
      break;
    case DomainShape::annulus:
      d["r_in"] = s.r_in;
      d["r_out"] = s.r_out;
      break;
  }
  d["center"] = std::vector<double>(s.center.data(), s.center.data() + s.center.size());
  d["allow_non_mean_convex"] = s.allow_non_mean_convex;
  return d;
}

bool same_domain(const DomainSpec& a, const DomainSpec& b) {
  if (a.dim != b.dim || a.shape != b.shape || a.center != b.center ||
      a.allow_non_mean_convex != b.allow_non_mean_convex) {
    return false;
  }
  switch (a.shape) {
    case DomainShape::ball: return a.radius == b.radius;
    case DomainShape::ellipse: return a.semi_axes == b.semi_axes;
    case DomainShape::annulus: return a.r_in == b.r_in && a.r_out == b.r_out;
  }
  return false;
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::solve: return "solve";
    case RunMode::verify: return "verify";
    case RunMode::cap: return "cap";
    case RunMode::report: return "report";
  }
  return "unknown";
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return a.mode == b.mode && same_domain(a.domain, b.domain) && a.sigma == b.sigma &&
         a.eps_schedule == b.eps_schedule && a.grid_resolution == b.grid_resolution &&
         a.seed == b.seed && a.output_dir == b.output_dir && a.n_samples == b.n_samples &&
         a.dims_to_sweep == b.dims_to_sweep && a.N == b.N &&
         a.fault_eps_scale == b.fault_eps_scale;
}

void validate_config(const RunConfig& c) {
  if (!(c.sigma > 0.0 && c.sigma < 1.0)) throw ConfigError("sigma", "sigma must lie in (0,1)");
  if (c.grid_resolution < 16 || c.grid_resolution > 512) {
    throw ConfigError("grid_resolution", "must lie in [16, 512]");
  }
  if (c.eps_schedule.empty()) throw ConfigError("eps_schedule", "must not be empty");
  for (std::size_t i = 0; i < c.eps_schedule.size(); ++i) {
    const std::string path = "eps_schedule[" + std::to_string(i) + "]";
    if (!(c.eps_schedule[i] > 0.0 && c.eps_schedule[i] < 0.5)) {
      throw ConfigError(path, "must lie in (0, 0.5)");
    }
    if (i > 0 && !(c.eps_schedule[i] < c.eps_schedule[i - 1])) {
      throw ConfigError(path, "schedule must be strictly decreasing");
    }
  }
  if (c.n_samples < 1) throw ConfigError("n_samples", "must be positive");
  if (c.dims_to_sweep.empty()) throw ConfigError("dims_to_sweep", "must not be empty");
  for (std::size_t i = 0; i < c.dims_to_sweep.size(); ++i) {
    if (c.dims_to_sweep[i] < 2 || c.dims_to_sweep[i] > 64) {
      throw ConfigError("dims_to_sweep[" + std::to_string(i) + "]", "must lie in [2, 64]");
    }
  }
  if (!(c.N > 1.0)) throw ConfigError("N", "must exceed 1");
  if (!(c.fault_eps_scale > 0.0)) throw ConfigError("fault_eps_scale", "must be positive");
  if (c.output_dir.empty()) throw ConfigError("output_dir", "must not be empty");
}

RunConfig parse_config(const std::string& document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("", "configuration must be a JSON object");
  reject_unknown(j, kTopKeys, "");

  RunConfig c;
  if (j.contains("mode")) {
    const json& m = j["mode"];
    if (!m.is_string()) throw ConfigError("mode", "expected a string");
    const std::string s = m.get<std::string>();
    if (s == "solve") c.mode = RunMode::solve;
    else if (s == "verify") c.mode = RunMode::verify;
    else if (s == "cap") c.mode = RunMode::cap;
    else if (s == "report") c.mode = RunMode::report;
    else throw ConfigError("mode", "must be one of solve, verify, cap, report");
  }
  if (j.contains("domain")) c.domain = parse_domain(j["domain"]);
  if (j.contains("sigma")) c.sigma = get_real(j["sigma"], "sigma");
  if (j.contains("eps_schedule")) c.eps_schedule = get_reals(j["eps_schedule"], "eps_schedule");
  if (j.contains("grid_resolution")) {
    const auto r = get_int(j["grid_resolution"], "grid_resolution");
    if (r < 16 || r > 512) throw ConfigError("grid_resolution", "must lie in [16, 512]");
    c.grid_resolution = static_cast<int>(r);
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ConfigError("seed", "expected an unsigned integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ConfigError("output_dir", "expected a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("n_samples")) c.n_samples = get_int(j["n_samples"], "n_samples");
  if (j.contains("dims_to_sweep")) {
    const json& d = j["dims_to_sweep"];
    if (!d.is_array()) throw ConfigError("dims_to_sweep", "expected an array of integers");
    c.dims_to_sweep.clear();
    for (std::size_t i = 0; i < d.size(); ++i) {
      const auto n = get_int(d[i], "dims_to_sweep[" + std::to_string(i) + "]");
      if (n < 2 || n > 64) {
        throw ConfigError("dims_to_sweep[" + std::to_string(i) + "]", "must lie in [2, 64]");
      }
      c.dims_to_sweep.push_back(static_cast<int>(n));
    }
  }
  if (j.contains("N")) c.N = get_real(j["N"], "N");
  if (j.contains("fault_eps_scale")) c.fault_eps_scale = get_real(j["fault_eps_scale"], "fault_eps_scale");
  validate_config(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["mode"] = to_string(c.mode);
  j["domain"] = domain_json(c.domain);
  j["sigma"] = c.sigma;
  j["eps_schedule"] = c.eps_schedule;
  j["grid_resolution"] = c.grid_resolution;
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  j["n_samples"] = c.n_samples;
  j["dims_to_sweep"] = c.dims_to_sweep;
  j["N"] = c.N;
  j["fault_eps_scale"] = c.fault_eps_scale;
  return j.dump(2);
}

}  // namespace plateau
