#include "udcdma/complexity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "udcdma/channel.hpp"
#include "udcdma/decoder.hpp"
#include "udcdma/quantizer.hpp"

namespace udcdma {

namespace {

void check_level(int level, int lowest) {
  if (level < lowest || level > kMaxAnalyticLevel)
    throw std::invalid_argument("level " + std::to_string(level) + " outside supported range " +
                                std::to_string(lowest) + ".." + std::to_string(kMaxAnalyticLevel));
}

std::vector<BigInt> binomial_row(std::size_t n) {
  std::vector<BigInt> row(n + 1);
  row[0] = 1;
  for (std::size_t k = 1; k <= n; ++k) row[k] = row[k - 1] * (n - k + 1) / k;
  return row;
}

BigInt pow2(std::size_t e) { return BigInt(1) << e; }

double to_double(const BigRational& r) { return r.convert_to<double>(); }

}  // namespace

BigInt first_quantize_total(const TernaryCodebook& c) {
  const int k = static_cast<int>(c.cols());
  const Constellation grid(-k, k, 2);
  // The first chip only sees the number of -1 entries, so group words by that count.
  const auto counts = binomial_row(c.cols());
  BigInt total = 0;
  for (int j = 0; j <= k; ++j) total += counts[j] * quantize(k - 2.0 * j, grid).comparisons;
  return total;
}

BigInt analytic_G(int level) {
  check_level(level, 2);
  if (level == 2) return first_quantize_total(build_codebook(2)) / 2;
  const std::size_t k = codebook_cols(level);
  const std::size_t top = codebook_cols(level - 1);
  const auto c = binomial_row(k);
  BigInt g = 0;
  for (std::size_t j = 0; j <= top; ++j) g += c[j] * (j + 1);
  return g;
}

BigInt analytic_H(int level) {
  check_level(level, 3);
  const long kp = static_cast<long>(codebook_cols(level - 1));
  const auto c = binomial_row(static_cast<std::size_t>(kp));
  BigInt h = 0;
  for (long j = 1; j <= kp; ++j) {
    const BigInt& mid = c[j / 2];
    h += mid * mid * (j + 1);
    for (long k = 0; k <= (j - 1) / 2; ++k) h += 2 * c[k] * c[j - k] * (2 * k + 1);
    for (long k = 0; k <= (j - 2) / 2 && j >= 2; ++k) h += 2 * c[k] * c[j - k - 1] * (2 * k + 2);
  }
  return h;
}

BigInt analytic_U(int level) {
  check_level(level, 3);
  const long kp = static_cast<long>(codebook_cols(level - 1));
  const auto c = binomial_row(static_cast<std::size_t>(kp));
  BigInt u = 4 * (pow2((std::size_t{1} << level) - 1) - 2);
  for (long j = 2; j <= kp; ++j) {
    const BigInt& mid = c[j / 2];
    BigInt t = mid * mid;
    for (long k = 1; k <= (j - 1) / 2; ++k) t += 2 * c[k] * c[j - k];
    for (long k = 1; k <= (j - 2) / 2; ++k) t += 2 * c[k] * c[j - k - 1];
    u += 2 * t;
  }
  return u;
}

BigRational analytic_T_exact(int level) {
  check_level(level, 2);
  if (level == 2) return BigRational(kLevelTwoReferenceTotal) / BigRational(256);
  const BigRational t_hat = analytic_T_hat_exact(level - 1);
  const BigInt half = pow2(codebook_cols(level) - 1);
  return (BigRational(analytic_G(level) + analytic_H(level)) + BigRational(analytic_U(level)) * t_hat) /
         BigRational(half);
}

BigRational analytic_T_hat_exact(int level) {
  check_level(level, 2);
  const BigInt half = pow2(codebook_cols(level) - 1);
  return (BigRational(half) * analytic_T_exact(level) - BigRational(analytic_G(level))) /
         BigRational(half - 1);
}

double analytic_T(int level) { return to_double(analytic_T_exact(level)); }

EmpiricalComplexity empirical_comparisons(const TernaryCodebook& c, SampleMode mode, std::size_t max_exhaustive_cols) {
  const std::size_t k = c.cols();
  if (mode.exhaustive && k > max_exhaustive_cols) {
    const double cost = std::ldexp(1.0, static_cast<int>(k));
    throw CostBoundError("exhaustive enumeration over " + std::to_string(k) + " users refused; bound is " +
                             std::to_string(max_exhaustive_cols),
                         cost);
  }
  if (!mode.exhaustive && mode.count == 0) throw std::invalid_argument("sample count must be positive");

  EmpiricalComplexity out;
  out.total_by_negatives.assign(k + 1, 0);
  out.words_by_negatives.assign(k + 1, 0);
  const std::uint64_t n = mode.exhaustive ? (std::uint64_t{1} << k) : mode.count;
  for (std::uint64_t t = 0; t < n; ++t) {
    const AntipodalWord x = mode.exhaustive ? AntipodalWord::from_index(t, k) : random_word(k, mode.seed, {0, t});
    const DecodeOutcome d = fda_decode(c, spread(c, x, 1.0), 1.0);
    const std::size_t neg = x.count_negative();
    out.total_comparisons += d.comparisons;
    out.total_by_negatives[neg] += d.comparisons;
    out.words_by_negatives[neg] += 1;
    out.errors += !(d.word == x);
  }
  out.words = n;
  return out;
}

double empirical_avg_comparisons(const TernaryCodebook& c, SampleMode mode) {
  return to_double(empirical_comparisons(c, mode).mean());
}

ComplexityReport complexity_report(int level, ComplexityMode mode, SampleMode sampling) {
  check_level(level, 2);
  ComplexityReport r;
  r.level = level;
  r.sample_mode = sampling;
  if (mode != ComplexityMode::Empirical) {
    r.G = analytic_G(level);
    if (level >= 3) {
      r.H = analytic_H(level);
      r.U = analytic_U(level);
      r.T_hat_prev = to_double(analytic_T_hat_exact(level - 1));
    }
    r.T = analytic_T(level);
  }
  if (mode != ComplexityMode::Analytic) {
    const TernaryCodebook c = build_codebook(level);
    r.empirical = empirical_comparisons(c, sampling);
    r.empirical_T = to_double(r.empirical->mean());
  }
  return r;
}

std::string to_json(const ComplexityReport& r) {
  nlohmann::ordered_json j;
  j["level"] = r.level;
  auto big = [](const std::optional<BigInt>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(v->str()) : nlohmann::ordered_json(nullptr);
  };
  auto real = [](const std::optional<double>& v) -> nlohmann::ordered_json {
    return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
  };
  j["G"] = big(r.G);
  j["H"] = big(r.H);
  j["U"] = big(r.U);
  j["T"] = real(r.T);
  j["T_hat_prev"] = real(r.T_hat_prev);
  j["empirical_T"] = real(r.empirical_T);
  if (r.empirical) {
    j["sample_mode"] = r.sample_mode.exhaustive ? "exhaustive" : "sampled";
    j["words"] = r.empirical->words;
    if (!r.sample_mode.exhaustive) j["seed"] = r.sample_mode.seed;
    j["total_comparisons"] = r.empirical->total_comparisons;
    j["total_by_negatives"] = r.empirical->total_by_negatives;
    j["words_by_negatives"] = r.empirical->words_by_negatives;
    j["decode_errors"] = r.empirical->errors;
  } else {
    j["sample_mode"] = nullptr;
  }
  return j.dump(2);
}

}  // namespace udcdma
