#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "udcdma/decoder.hpp"

namespace udcdma {

enum class DecoderKind { Fda, Ml };
enum class SnrConvention { EbN0, RawSigma };
enum class OutputFormat { Csv, Json };

std::string to_string(DecoderKind d);
std::string to_string(SnrConvention s);
DecoderKind parse_decoder(const std::string& name);

// Environment variable that overrides SimConfig::workers when set.
inline constexpr const char* kWorkersEnv = "UDCDMA_WORKERS";

struct SimConfig {
  int level = 2;
  std::vector<double> grid;  // Eb/N0 in dB, or per-chip sigma under RawSigma
  std::uint64_t trials_per_point = 10000;
  std::uint64_t rng_seed = 1;
  std::vector<DecoderKind> decoders{DecoderKind::Fda};
  double amplitude = 1.0;
  SnrConvention snr_convention = SnrConvention::EbN0;
  unsigned workers = 1;
  // When nonzero, a point stops once every decoder has this many bit errors;
  // trials_per_point stays the cap.
  std::uint64_t min_errors = 0;
  std::size_t ml_max_cols = kDefaultMlColumnBound;

  void validate() const;
};

struct BerPoint {
  std::optional<double> snr_db;
  double sigma = 0.0;
  DecoderKind decoder = DecoderKind::Fda;
  std::uint64_t trials = 0;
  std::uint64_t bit_errors = 0;
  std::uint64_t word_errors = 0;
  double ber = 0.0;
  double wer = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double mean_comparisons = 0.0;
};

struct BerCurve {
  SimConfig config;
  std::vector<BerPoint> points;
};

// Trial t draws its word from (seed, kDataStream, t) and its noise from (seed, kNoiseStream, t),
// at every grid point and for every decoder.
inline constexpr std::uint64_t kDataStream = 0;
inline constexpr std::uint64_t kNoiseStream = 1;

// Trials are processed in fixed-size batches so results never depend on the worker count.
inline constexpr std::uint64_t kTrialsPerBatch = 1024;

BerCurve run_ber_sweep(const SimConfig& cfg);

// 95% Wilson score interval for `successes` out of `trials`.
std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials);

// Effective worker count after applying the environment override.
unsigned resolve_workers(unsigned requested);

void write_csv(const BerCurve& curve, std::ostream& out);
std::string to_json(const BerCurve& curve);
void emit_results(const BerCurve& curve, OutputFormat format, const std::string& path);

}  // namespace udcdma
