#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "udcdma/codebook.hpp"

namespace udcdma {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline constexpr int kMaxAnalyticLevel = 10;

// Stored level-2 reference: total comparisons over all 256 noiseless words.
inline constexpr std::uint64_t kLevelTwoReferenceTotal = 1500;

// Comparisons spent by the first (count) quantizer, summed over one word of each
// sign-flip pair {x, -x}.
BigInt analytic_G(int level);
// Comparisons of the second (split) quantizer over the same half of the inputs.
BigInt analytic_H(int level);
// Number of sub-block decodes that run with a known count over the same half.
BigInt analytic_U(int level);
BigRational analytic_T_exact(int level);
double analytic_T(int level);
// Average of the level's decoder with the first quantizer's cost removed.
BigRational analytic_T_hat_exact(int level);

// First-quantizer comparisons summed over every word of the codebook, by enumeration.
BigInt first_quantize_total(const TernaryCodebook& c);

struct SampleMode {
  bool exhaustive = true;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;

  static SampleMode all() { return {}; }
  static SampleMode sampled(std::uint64_t count, std::uint64_t seed) { return {false, count, seed}; }
};

struct EmpiricalComplexity {
  std::uint64_t words = 0;
  std::uint64_t total_comparisons = 0;
  std::vector<std::uint64_t> total_by_negatives;  // indexed by number of -1 entries
  std::vector<std::uint64_t> words_by_negatives;
  std::uint64_t errors = 0;                       // words not recovered exactly
  BigRational mean() const { return BigRational(total_comparisons) / BigRational(words); }
};

EmpiricalComplexity empirical_comparisons(const TernaryCodebook& c, SampleMode mode,
                                          std::size_t max_exhaustive_cols = kDefaultUdColumnBound);
double empirical_avg_comparisons(const TernaryCodebook& c, SampleMode mode);

struct ComplexityReport {
  int level = 0;
  std::optional<BigInt> G;
  std::optional<BigInt> H;
  std::optional<BigInt> U;
  std::optional<double> T;
  std::optional<double> T_hat_prev;
  std::optional<double> empirical_T;
  std::optional<EmpiricalComplexity> empirical;
  SampleMode sample_mode;
};

enum class ComplexityMode { Analytic, Empirical, Both };

ComplexityReport complexity_report(int level, ComplexityMode mode, SampleMode sampling);
std::string to_json(const ComplexityReport& r);

}  // namespace udcdma
