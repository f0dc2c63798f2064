#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace plateau::lab {

/// Sample attaining a certificate's minimum margin, enough to replay it.
struct Witness {
  std::vector<double> kappa;
  int index = -1;
  std::vector<double> t;
  double delta = 0.0;
  double value = 0.0;
};

struct CertificateRecord {
  std::string name;
  int n = 0;  // dimension, or the largest n of a constant sweep
  std::int64_t samples = 0;
  double min_margin = 0.0;
  std::uint64_t seed = 0;
  bool strict = false;         // pass needs min_margin > 0 rather than >= -1e-10
  bool informational = false;  // reported but not part of the overall verdict
  bool pass = false;
  std::optional<Witness> witness;
  std::vector<double> detail;  // certificate-specific extra numbers
};

inline constexpr double kNonnegTolerance = 1e-10;

/// Applies the pass rule for the record's kind.
void settle(CertificateRecord& record);

struct SweepOptions {
  std::uint64_t seed = 20240601;
  std::int64_t samples = 100000;
  std::vector<int> dims{2, 3, 4, 5, 6, 7, 8};
  double sigma = 0.6;
  double N = 0.0;  // 0 = default 3 + 2 sqrt 3
  double fault_eps_scale = 1.0;
  int threads = 0;  // 0 = hardware concurrency
  std::int64_t constant_sweep_max_n = 1000000;
};

struct CertificateSuite {
  std::vector<CertificateRecord> records;
  std::map<int, std::pair<double, double>> constants;  // n -> (alpha, beta)

  bool all_pass() const;
};

// Sampled certificates for one dimension.
CertificateRecord certify_sharp1(int n, std::int64_t samples, std::uint64_t seed,
                                 int threads = 0);
/// Minimum normalized sharp-1 slack of boundary-hugging draws, bucketed by
/// decade of S_2/S_1^2: detail[b] is the minimum over [10^-(b+1), 10^-b) for
/// b < 9, detail[9 + b] the draw count of bucket b, detail[18] the count of
/// draws below 1e-9. Passes when the minimum shrinks by at least two decades
/// from the outermost bucket to the innermost one holding 100 draws.
CertificateRecord certify_sharp1_trend(int n, std::int64_t samples,
                                       std::uint64_t seed, int threads = 0);
std::vector<CertificateRecord> certify_sharp2(int n, std::int64_t samples,
                                              std::uint64_t seed, int threads = 0);
CertificateRecord certify_qform(int n, std::int64_t samples, std::uint64_t seed,
                                double eps_scale = 1.0, int threads = 0);
std::vector<CertificateRecord> certify_trace_det(int n, std::int64_t samples,
                                                 std::uint64_t seed, int threads = 0);
std::vector<CertificateRecord> certify_identities(int n, std::int64_t samples,
                                                  std::uint64_t seed, int threads = 0);
CertificateRecord certify_q_roots(int n);

// Constant-chasing sweeps over n = 2..max_n.
std::vector<CertificateRecord> certify_constant_sweeps(std::int64_t max_n, double N);
std::vector<CertificateRecord> certify_claim1_quadratic(double sigma, double N);

CertificateSuite run_certificates(const SweepOptions& options);

/// Deterministic per-task seed derived from the run seed.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& name, int n,
                          std::int64_t chunk);

/// Splits [0, total) into fixed chunks and runs `body(chunk, begin, end)`
/// on up to `threads` workers. Chunk boundaries do not depend on the
/// worker count.
void parallel_chunks(std::int64_t total, std::int64_t chunk_size, int threads,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& body);

}  // namespace plateau::lab
