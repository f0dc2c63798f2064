#pragma once

#include "plateau/certificates.hpp"
#include "plateau/config.hpp"

#include <string>

namespace plateau {

struct VerifyOutcome {
  lab::CertificateSuite suite;
  std::string json;  // contents of verify.json
  bool pass = false;
};

lab::SweepOptions sweep_options(const RunConfig& config, int threads = 0);

/// Deterministic verify document: records (with replay witnesses), the
/// constants table and the overall verdict.
std::string verify_report_json(const lab::CertificateSuite& suite, const RunConfig& config);

/// Runs every certificate and writes `output_dir/verify.json`.
VerifyOutcome run_verify(const RunConfig& config, int threads = 0);

}  // namespace plateau
