// One line per acceptance criterion; exit status is nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "udcdma/cli.hpp"
#include "udcdma/codebook.hpp"
#include "udcdma/complexity.hpp"
#include "udcdma/decoder.hpp"
#include "udcdma/simulation.hpp"

using namespace udcdma;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

int run_cli(std::vector<std::string> args, std::string& out) {
  args.insert(args.begin(), "udcdma");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), o, e);
  out = o.str();
  return code;
}

bool structure_ok(int level) {
  const TernaryCodebook c = build_codebook(level);
  const TernaryMatrix hat = strip_first_row(build_codebook(level - 1).matrix);
  const std::size_t kp = hat.cols();
  const std::size_t l = std::size_t{1} << level;
  const std::size_t k = (std::size_t{1} << (level + 1)) + (std::size_t{1} << (level - 2)) - 1;
  if (c.rows() != l || c.cols() != k || k != 2 * kp + 1) return false;
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t j = 0; j < k; ++j) {
      int want;
      if (r == 0) want = 1;
      else if (r == 1) want = j < kp ? 1 : j == kp ? 0 : -1;
      else if (j == kp) want = 0;
      else if (r <= hat.rows() + 1) want = j < kp ? hat.at(r - 2, j) : 0;
      else want = j > kp ? hat.at(r - 2 - hat.rows(), j - kp - 1) : 0;
      if (c.matrix.at(r, j) != want) return false;
    }
  return true;
}

Verdict construction() {
  std::string g1, g2;
  run_cli({"gen", "--level", "1"}, g1);
  run_cli({"gen", "--level", "2"}, g2);
  const bool eq1 = g1 == "1,1,1\n1,0,-1\n";
  const bool eq2 = g2 == "1,1,1,1,1,1,1,1\n1,1,1,1,0,-1,-1,-1\n1,1,0,-1,0,1,0,-1\n1,0,0,-1,0,-1,0,1\n";
  bool blocks = true;
  for (int i = 3; i <= 5; ++i) blocks = blocks && structure_ok(i);
  return {eq1 && eq2 && blocks, std::string("level1 ") + (eq1 ? "exact" : "WRONG") + ", level2 " +
                                     (eq2 ? "exact" : "WRONG") + ", levels 3-5 structure " + (blocks ? "ok" : "BROKEN")};
}

Verdict ud_certification() {
  const bool l2 = verify_ud(build_codebook(2).matrix).verdict;
  const bool l3 = verify_ud(build_codebook(3).matrix).verdict;
  const TernaryMatrix four = TernaryMatrix::from_rows({{0, 1, 1, 1}, {1, 0, -1, 1}});
  const UdWitness w = verify_ud(four);
  bool witness_ok = !w.verdict && w.counterexample.has_value();
  if (witness_ok) {
    bool nonzero = false;
    for (int d : *w.counterexample) nonzero = nonzero || d != 0;
    witness_ok = nonzero;
    for (long v : four.multiply(*w.counterexample)) witness_ok = witness_ok && v == 0;
  }
  return {l2 && l3 && witness_ok, std::string("level2 ") + (l2 ? "UD" : "not UD") + ", level3 " +
                                      (l3 ? "UD" : "not UD") + ", 2x4 set " +
                                      (witness_ok ? "rejected with valid witness" : "NOT rejected properly")};
}

Verdict ft_search() {
  std::ostringstream d;
  bool ok = true;
  const int expect[] = {3, 5, 8};
  for (int l = 2; l <= 4; ++l) {
    const FtSearchResult r = max_ud_columns(l);
    const bool good = r.max_columns == expect[l - 2] && verify_ud(r.exemplar).verdict;
    ok = ok && good;
    d << (l > 2 ? ", " : "") << "L=" << l << " -> " << r.max_columns;
  }
  return {ok, d.str() + " (expected 3, 5, 8)"};
}

Verdict round_trip() {
  std::ostringstream d;
  bool ok = true;
  for (int level = 2; level <= 3; ++level) {
    const TernaryCodebook c = build_codebook(level);
    std::uint64_t wrong = 0;
    const std::uint64_t n = std::uint64_t{1} << c.cols();
    for (std::uint64_t i = 0; i < n; ++i) {
      const AntipodalWord x = AntipodalWord::from_index(i, c.cols());
      wrong += !(fda_decode(c, spread(c, x, 1.0), 1.0).word == x);
    }
    ok = ok && wrong == 0;
    d << "level" << level << " " << (n - wrong) << "/" << n << ", ";
  }
  const TernaryCodebook c4 = build_codebook(4);
  std::uint64_t wrong = 0;
  for (std::uint64_t t = 0; t < 100000; ++t) {
    const AntipodalWord x = random_word(c4.cols(), 2024, {0, t});
    wrong += !(fda_decode(c4, spread(c4, x, 1.0), 1.0).word == x);
  }
  ok = ok && wrong == 0;
  d << "level4 " << (100000 - wrong) << "/100000 random";
  return {ok, d.str()};
}

Verdict census() {
  const std::vector<std::uint64_t> expect{1, 25, 144, 289, 488, 369, 155, 28, 1};
  const EmpiricalComplexity e = empirical_comparisons(build_codebook(2), SampleMode::all());
  std::ostringstream d;
  d << "by n: (";
  for (std::size_t i = 0; i < e.total_by_negatives.size(); ++i) d << (i ? ", " : "") << e.total_by_negatives[i];
  d << "), sum " << e.total_comparisons << ", average " << e.total_comparisons << "/256; expected (1, 25, 144, 289, "
    << "488, 369, 155, 28, 1), sum 1500";
  return {e.total_by_negatives == expect && e.total_comparisons == 1500, d.str()};
}

Verdict table_three() {
  const double t3 = analytic_T(3);
  const double t4 = analytic_T(4);
  const EmpiricalComplexity e = empirical_comparisons(build_codebook(3), SampleMode::all());
  const double emp = e.mean().convert_to<double>();
  const bool a3 = std::abs(t3 - 17.98) <= 0.01;
  const bool a4 = std::abs(t4 - 50.24) <= 0.01;
  const bool em = std::abs(emp - t3) <= 0.01;
  std::ostringstream d;
  d << std::fixed << std::setprecision(5) << "analytic T3 " << t3 << (a3 ? " ok" : " OFF") << ", T4 " << t4
    << (a4 ? " ok" : " OFF") << ", empirical level-3 average " << emp << " (" << e.total_comparisons
    << "/131072, |diff| " << std::abs(emp - t3) << (em ? " ok" : " > 0.01") << ")";
  return {a3 && a4 && em, d.str()};
}

Verdict ml_agreement() {
  std::ostringstream d;
  bool ok = true;
  for (int level = 2; level <= 3; ++level) {
    const TernaryCodebook c = build_codebook(level);
    const MlDecoder ml(c);
    std::uint64_t differ = 0;
    const std::uint64_t n = std::uint64_t{1} << c.cols();
    for (std::uint64_t i = 0; i < n; ++i) {
      const ChipVector y = spread(c, AntipodalWord::from_index(i, c.cols()), 1.0);
      differ += !(ml.decode(y, 1.0).word == fda_decode(c, y, 1.0).word);
    }
    ok = ok && differ == 0;
    d << "level" << level << " noiseless disagreements " << differ << "/" << n << ", ";
  }
  const TernaryCodebook c = build_codebook(2);
  const MlDecoder ml(c);
  std::uint64_t worse = 0;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    const AntipodalWord x = random_word(8, 555, {0, t});
    const ChipVector y = add_awgn(spread(c, x, 1.0), {1.0, 0.3 + 0.2 * (t % 8), 555}, {1, t});
    const double r_ml = residual(c, y, ml.decode(y, 1.0).word, 1.0);
    const double r_fda = residual(c, y, fda_decode(c, y, 1.0).word, 1.0);
    worse += r_ml > r_fda + 1e-9;
  }
  ok = ok && worse == 0;
  d << "noisy level2 vectors with ML residual above FDA: " << worse << "/10000";
  return {ok, d.str()};
}

// Eb/N0 where the curve first falls through `target`, interpolating log10(BER) linearly.
std::optional<double> crossing(const BerCurve& c, DecoderKind k, double target) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : c.points)
    if (p.decoder == k) pts.emplace_back(*p.snr_db, p.ber);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto [x0, b0] = pts[i];
    const auto [x1, b1] = pts[i + 1];
    if (b0 >= target && b1 < target && b1 > 0) {
      const double f = (std::log10(b0) - std::log10(target)) / (std::log10(b0) - std::log10(b1));
      return x0 + f * (x1 - x0);
    }
  }
  return std::nullopt;
}

Verdict ber_gap() {
  SimConfig cfg;
  cfg.level = 2;
  for (double db = 10.0; db <= 13.51; db += 0.25) cfg.grid.push_back(db);
  cfg.trials_per_point = 1000000;
  cfg.rng_seed = 20240601;
  cfg.decoders = {DecoderKind::Fda, DecoderKind::Ml};
  const BerCurve curve = run_ber_sweep(cfg);
  const auto f = crossing(curve, DecoderKind::Fda, 1e-3);
  const auto m = crossing(curve, DecoderKind::Ml, 1e-3);
  std::ostringstream d;
  d << std::fixed << std::setprecision(3);
  bool ok = f && m;
  if (ok) {
    const double gap = *f - *m;
    ok = gap >= 0.3 && gap <= 2.0;
    d << "level2 BER 1e-3 at Eb/N0 " << *f << " dB (fda) vs " << *m << " dB (ml), gap " << gap
      << " dB (band 0.3-2.0)";
  } else {
    d << "BER 1e-3 not bracketed by the grid";
  }

  SimConfig c3;
  c3.level = 3;
  c3.grid = {4.0, 7.0, 10.0};
  c3.trials_per_point = 3000;
  c3.rng_seed = 7;
  c3.decoders = {DecoderKind::Fda, DecoderKind::Ml};
  const BerCurve l3 = run_ber_sweep(c3);
  bool dominance = true;
  for (std::size_t i = 0; i + 1 < l3.points.size(); i += 2) {
    const BerPoint& fp = l3.points[i];
    const BerPoint& mp = l3.points[i + 1];
    const double slack = (fp.ci_high - fp.ci_low) + (mp.ci_high - mp.ci_low);
    dominance = dominance && mp.ber <= fp.ber + slack;
  }
  d << "; level3 ML dominance over " << l3.points.size() / 2 << " points: " << (dominance ? "holds" : "VIOLATED");
  return {ok && dominance, d.str()};
}

Verdict determinism() {
  ::unsetenv(kWorkersEnv);
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = dir / "udcdma_accept_w1.csv";
  const auto b = dir / "udcdma_accept_w4.csv";
  const std::vector<std::string> base{"ber", "--level", "2", "--snr", "0:2:10", "--trials", "30000",
                                      "--seed", "42", "--decoders", "fda,ml"};
  std::string out;
  auto args1 = base;
  args1.insert(args1.end(), {"--workers", "1", "--out", a.string()});
  auto args4 = base;
  args4.insert(args4.end(), {"--workers", "4", "--out", b.string()});
  const bool ran = run_cli(args1, out) == 0 && run_cli(args4, out) == 0;
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  const std::string sa = slurp(a), sb = slurp(b);
  std::filesystem::remove(a);
  std::filesystem::remove(b);
  const bool same = ran && !sa.empty() && sa == sb;
  return {same, "ber CSV with 1 and 4 workers " + std::string(same ? "byte-identical" : "DIFFER") + " (" +
                    std::to_string(sa.size()) + " bytes)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"construction fidelity", construction},
      {"UD certification", ud_certification},
      {"maximum UD columns for L=2,3,4", ft_search},
      {"noiseless round trip", round_trip},
      {"level-2 comparison census", census},
      {"complexity table reconciliation", table_three},
      {"ML agreement", ml_agreement},
      {"FDA vs ML BER gap", ber_gap},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first << ": " << v.detail
              << " (" << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
