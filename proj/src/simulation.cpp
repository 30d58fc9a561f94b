#include "udcdma/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace udcdma {

std::string to_string(DecoderKind d) { return d == DecoderKind::Fda ? "fda" : "ml"; }

std::string to_string(SnrConvention s) { return s == SnrConvention::EbN0 ? "ebn0" : "raw_sigma"; }

DecoderKind parse_decoder(const std::string& name) {
  if (name == "fda") return DecoderKind::Fda;
  if (name == "ml") return DecoderKind::Ml;
  throw std::invalid_argument("unknown decoder '" + name + "' (expected fda or ml)");
}

void SimConfig::validate() const {
  if (level < 2) throw std::invalid_argument("simulation needs level >= 2");
  if (grid.empty()) throw std::invalid_argument("SNR grid is empty");
  if (trials_per_point < 1) throw std::invalid_argument("trials per point must be >= 1");
  if (decoders.empty()) throw std::invalid_argument("no decoders selected");
  if (!(amplitude > 0.0)) throw std::invalid_argument("amplitude must be positive");
  if (snr_convention == SnrConvention::RawSigma)
    for (double s : grid)
      if (!(s >= 0.0) || !std::isfinite(s)) throw std::invalid_argument("sigma values must be finite and >= 0");
  const std::size_t k = codebook_cols(level);
  for (auto d : decoders)
    if (d == DecoderKind::Ml && k > ml_max_cols) {
      const double cost = std::ldexp(1.0, static_cast<int>(k));
      throw CostBoundError("ml decoding at level " + std::to_string(level) + " needs " + std::to_string(k) +
                               " users; bound is " + std::to_string(ml_max_cols),
                           cost);
    }
}

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {std::clamp(centre - half, 0.0, p), std::clamp(centre + half, p, 1.0)};
}

unsigned resolve_workers(unsigned requested) {
  if (const char* env = std::getenv(kWorkersEnv); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw std::invalid_argument(std::string(kWorkersEnv) + " must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return std::max(1u, requested);
}

namespace {

// Batches decided together under a min-errors rule; fixed so the cut point is worker independent.
constexpr std::uint64_t kBatchesPerRound = 64;

struct Tally {
  std::uint64_t bit_errors = 0;
  std::uint64_t word_errors = 0;
  std::uint64_t comparisons = 0;
};

class PointRunner {
 public:
  PointRunner(const SimConfig& cfg, const TernaryCodebook& c, const MlDecoder* ml, double sigma)
      : cfg_(cfg), c_(c), ml_(ml), channel_{cfg.amplitude, sigma, cfg.rng_seed} {}

  // Tallies for trials [first, last), one entry per configured decoder.
  std::vector<Tally> run_batch(std::uint64_t first, std::uint64_t last) const {
    std::vector<Tally> out(cfg_.decoders.size());
    for (std::uint64_t t = first; t < last; ++t) {
      const AntipodalWord x = random_word(c_.cols(), cfg_.rng_seed, {kDataStream, t});
      const ChipVector y = add_awgn(spread(c_, x, cfg_.amplitude), channel_, {kNoiseStream, t});
      for (std::size_t d = 0; d < cfg_.decoders.size(); ++d) {
        const DecodeOutcome res = cfg_.decoders[d] == DecoderKind::Fda ? fda_decode(c_, y, cfg_.amplitude)
                                                                      : ml_->decode(y, cfg_.amplitude);
        std::uint64_t wrong = 0;
        for (std::size_t j = 0; j < x.size(); ++j) wrong += res.word[j] != x[j];
        out[d].bit_errors += wrong;
        out[d].word_errors += wrong != 0;
        out[d].comparisons += res.comparisons;
      }
    }
    return out;
  }

 private:
  const SimConfig& cfg_;
  const TernaryCodebook& c_;
  const MlDecoder* ml_;
  ChannelConfig channel_;
};

// Runs batches [first, last) over `workers` threads; slot i receives batch first + i.
std::vector<std::vector<Tally>> run_batches(const PointRunner& runner, std::uint64_t first, std::uint64_t last,
                                            std::uint64_t trial_cap, unsigned workers) {
  std::vector<std::vector<Tally>> slots(last - first);
  std::atomic<std::uint64_t> next{first};
  auto work = [&] {
    for (std::uint64_t b = next++; b < last; b = next++) {
      const std::uint64_t lo = b * kTrialsPerBatch;
      const std::uint64_t hi = std::min(trial_cap, lo + kTrialsPerBatch);
      slots[b - first] = runner.run_batch(lo, hi);
    }
  };
  const unsigned n = static_cast<unsigned>(std::min<std::uint64_t>(workers, last - first));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return slots;
}

}  // namespace

BerCurve run_ber_sweep(const SimConfig& cfg) {
  cfg.validate();
  const unsigned workers = resolve_workers(cfg.workers);
  const TernaryCodebook c = build_codebook(cfg.level);
  std::optional<MlDecoder> ml;
  if (std::find(cfg.decoders.begin(), cfg.decoders.end(), DecoderKind::Ml) != cfg.decoders.end())
    ml.emplace(c, cfg.ml_max_cols);

  BerCurve curve;
  curve.config = cfg;
  const std::uint64_t total_batches = (cfg.trials_per_point + kTrialsPerBatch - 1) / kTrialsPerBatch;
  for (double g : cfg.grid) {
    const bool raw = cfg.snr_convention == SnrConvention::RawSigma;
    const double sigma = raw ? g : ebn0_to_sigma(g, c, cfg.amplitude);
    const PointRunner runner(cfg, c, ml ? &*ml : nullptr, sigma);

    std::vector<Tally> sum(cfg.decoders.size());
    std::uint64_t trials = 0;
    const std::uint64_t step = cfg.min_errors > 0 ? kBatchesPerRound : total_batches;
    bool done = false;
    for (std::uint64_t b0 = 0; b0 < total_batches && !done; b0 += step) {
      const std::uint64_t b1 = std::min(total_batches, b0 + step);
      const auto slots = run_batches(runner, b0, b1, cfg.trials_per_point, workers);
      for (std::uint64_t i = 0; i < slots.size() && !done; ++i) {
        for (std::size_t d = 0; d < sum.size(); ++d) {
          sum[d].bit_errors += slots[i][d].bit_errors;
          sum[d].word_errors += slots[i][d].word_errors;
          sum[d].comparisons += slots[i][d].comparisons;
        }
        trials = std::min(cfg.trials_per_point, (b0 + i + 1) * kTrialsPerBatch);
        if (cfg.min_errors > 0)
          done = std::all_of(sum.begin(), sum.end(), [&](const Tally& t) { return t.bit_errors >= cfg.min_errors; });
      }
    }

    for (std::size_t d = 0; d < sum.size(); ++d) {
      BerPoint p;
      if (!raw) p.snr_db = g;
      p.sigma = sigma;
      p.decoder = cfg.decoders[d];
      p.trials = trials;
      p.bit_errors = sum[d].bit_errors;
      p.word_errors = sum[d].word_errors;
      const std::uint64_t bits = trials * c.cols();
      p.ber = static_cast<double>(p.bit_errors) / static_cast<double>(bits);
      p.wer = static_cast<double>(p.word_errors) / static_cast<double>(trials);
      std::tie(p.ci_low, p.ci_high) = wilson_interval(p.bit_errors, bits);
      p.mean_comparisons = static_cast<double>(sum[d].comparisons) / static_cast<double>(trials);
      curve.points.push_back(p);
    }
  }
  return curve;
}

}  // namespace udcdma
