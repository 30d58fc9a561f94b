#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include <json.hpp>

#include "udcdma/complexity.hpp"
#include "udcdma/decoder.hpp"

using namespace udcdma;

namespace {

using u128 = unsigned __int128;

u128 choose(unsigned n, unsigned k) {
  if (k > n) return 0;
  u128 r = 1;
  for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::string str(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return s;
}

}  // namespace

TEST_CASE("first-quantizer totals against a binomial oracle") {
  for (int level = 2; level <= 5; ++level) {
    const unsigned k = static_cast<unsigned>(codebook_cols(level));
    u128 expect = 0;
    for (unsigned j = 0; j <= k; ++j) expect += choose(k, j) * (std::min(j, k - j) + 1);
    CHECK(first_quantize_total(build_codebook(level)).str() == str(expect));
  }
  // full-range identity for the plain j+1 weighting
  const unsigned k = 35;
  u128 plain = 0;
  for (unsigned j = 0; j <= k; ++j) plain += choose(k, j) * (j + 1);
  CHECK(plain == (u128(k) << (k - 1)) + (u128(1) << k));
}

TEST_CASE("G over half of the inputs") {
  CHECK(analytic_G(2) == 500);
  CHECK(analytic_G(3) == 513197);
  for (int level = 3; level <= 5; ++level) CHECK(2 * analytic_G(level) == first_quantize_total(build_codebook(level)));
}

TEST_CASE("H equals the enumerated second-quantizer cost at level 3") {
  const TernaryCodebook c = build_codebook(3);
  std::uint64_t total = 0;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << 17); ++i) {
    const AntipodalWord x = AntipodalWord::from_index(i, 17);
    const ChipVector y = spread(c, x, 1.0);
    const int z1 = quantize(y[0], -17, 17, 2).z;
    if (std::abs(z1) == 17) continue;
    const int r = 17 - std::abs(z1);
    total += quantize(y[1], -r, r, 2).comparisons;
  }
  CHECK(BigInt(total) == 2 * analytic_H(3));
  CHECK(analytic_H(3) == 410236);
}

TEST_CASE("U by direct transcription with 128-bit arithmetic") {
  for (int level = 3; level <= 4; ++level) {
    const unsigned kp = static_cast<unsigned>(codebook_cols(level - 1));
    u128 u = 4 * ((u128(1) << ((1u << level) - 1)) - 2);
    for (unsigned j = 2; j <= kp; ++j) {
      u128 t = choose(kp, j / 2) * choose(kp, j / 2);
      for (unsigned k = 1; 2 * k <= j - 1; ++k) t += 2 * choose(kp, k) * choose(kp, j - k);
      for (unsigned k = 1; 2 * k + 2 <= j; ++k) t += 2 * choose(kp, k) * choose(kp, j - k - 1);
      u += 2 * t;
    }
    CHECK(analytic_U(level).str() == str(u));
  }
  CHECK(analytic_U(3) == 129536);
  CHECK(analytic_U(3) > 504);
}

TEST_CASE("analytic averages") {
  CHECK(analytic_T_exact(2) == BigRational(1500, 256));
  CHECK(analytic_T(3) == doctest::Approx(17.98134).epsilon(1e-6));
  CHECK(analytic_T(4) == doctest::Approx(50.23756).epsilon(1e-6));
  double prev = 0.0;
  for (int level = 2; level <= 6; ++level) {
    const double t = analytic_T(level);
    CHECK(t > prev);
    prev = t;
  }
  CHECK(analytic_T_hat_exact(2) == BigRational(250, 127));
  CHECK(analytic_H(4) > 0);
  CHECK_THROWS_AS(analytic_H(2), std::invalid_argument);
  CHECK_THROWS_AS(analytic_T(1), std::invalid_argument);
}

TEST_CASE("empirical comparison counts") {
  const EmpiricalComplexity e2 = empirical_comparisons(build_codebook(2), SampleMode::all());
  CHECK(e2.words == 256);
  CHECK(e2.errors == 0);
  std::uint64_t sum = 0;
  for (auto v : e2.total_by_negatives) sum += v;
  CHECK(sum == e2.total_comparisons);
  CHECK(e2.total_by_negatives.front() == 1);
  CHECK(e2.total_by_negatives.back() == 1);
  // sign flip x -> -x leaves every quantizer cost unchanged
  for (std::size_t n = 0; n <= 8; ++n) CHECK(e2.total_by_negatives[n] == e2.total_by_negatives[8 - n]);

  const EmpiricalComplexity s1 = empirical_comparisons(build_codebook(4), SampleMode::sampled(2000, 5));
  const EmpiricalComplexity s2 = empirical_comparisons(build_codebook(4), SampleMode::sampled(2000, 5));
  CHECK(s1.total_comparisons == s2.total_comparisons);
  CHECK(s1.errors == 0);
  CHECK_THROWS_AS(empirical_comparisons(build_codebook(4), SampleMode::all()), CostBoundError);
  CHECK(empirical_avg_comparisons(build_codebook(2), SampleMode::all()) ==
        doctest::Approx(static_cast<double>(e2.total_comparisons) / 256.0));
}

TEST_CASE("complexity report JSON") {
  const auto j = nlohmann::json::parse(to_json(complexity_report(3, ComplexityMode::Both, SampleMode::all())));
  CHECK(j["G"] == "513197");
  CHECK(j["H"] == "410236");
  CHECK(j["U"] == "129536");
  CHECK(j["T"].get<double>() == doctest::Approx(17.98134).epsilon(1e-6));
  CHECK(j["sample_mode"] == "exhaustive");
  CHECK(j["words"] == 131072);
  const auto a = nlohmann::json::parse(to_json(complexity_report(2, ComplexityMode::Analytic, SampleMode::all())));
  CHECK(a["H"].is_null());
  CHECK(a["empirical_T"].is_null());
}
