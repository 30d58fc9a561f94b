#include "udcdma/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "udcdma/codebook.hpp"
#include "udcdma/complexity.hpp"
#include "udcdma/decoder.hpp"
#include "udcdma/simulation.hpp"

namespace udcdma {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) out.push_back(parse_double(tok));
  if (out.empty()) throw std::invalid_argument("empty value list");
  return out;
}

// "a:step:b", inclusive of b.
std::vector<double> parse_range(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3) throw std::invalid_argument("SNR range must look like start:step:stop");
  const double a = parse_double(parts[0]);
  const double step = parse_double(parts[1]);
  const double b = parse_double(parts[2]);
  if (!(step > 0.0) || b < a) throw std::invalid_argument("SNR range needs step > 0 and stop >= start");
  std::vector<double> out;
  const long n = static_cast<long>(std::floor((b - a) / step + 1e-9));
  for (long k = 0; k <= n; ++k) out.push_back(std::round((a + k * step) * 1e9) / 1e9);
  return out;
}

TernaryMatrix read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::vector<std::vector<int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<int> row;
    for (const auto& tok : split(line, ',')) row.push_back(std::stoi(tok));
    rows.push_back(std::move(row));
  }
  return TernaryMatrix::from_rows(rows);
}

std::string format_word(const AntipodalWord& w) {
  std::string s;
  for (std::size_t j = 0; j < w.size(); ++j) s += (j ? " " : "") + std::string(w[j] > 0 ? "+1" : "-1");
  return s;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recursive uniquely decodable ternary CDMA codes: construction, decoding, complexity, BER"};
  app.require_subcommand(1);

  int level = 2;
  std::string format = "csv";
  auto* gen = app.add_subcommand("gen", "print the code matrix of a level");
  gen->add_option("--level", level, "recursion level (>= 1)")->required();
  gen->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::string matrix_path;
  std::size_t max_cols = kDefaultUdColumnBound;
  auto* verify = app.add_subcommand("verify", "brute-force unique decodability check");
  auto* verify_level = verify->add_option("--level", level, "recursion level");
  verify->add_option("--matrix", matrix_path, "CSV matrix file instead of a level")->excludes(verify_level);
  verify->add_option("--max-cols", max_cols, "refuse matrices with more columns");

  int length = 2;
  auto* ft = app.add_subcommand("ft", "largest UD ternary matrix with a given number of rows");
  ft->add_option("--length", length, "rows, 2..4")->required();

  std::string y_text;
  std::string decoder = "fda";
  double amplitude = 1.0;
  auto* decode = app.add_subcommand("decode", "decode one received vector");
  decode->add_option("--level", level, "recursion level (>= 2)")->required();
  decode->add_option("--y", y_text, "comma-separated chip values")->required();
  decode->add_option("--decoder", decoder, "fda or ml")->check(CLI::IsMember({"fda", "ml"}));
  decode->add_option("--amplitude", amplitude, "signal amplitude");

  std::string snr_text;
  std::string sigma_text;
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  std::string decoders_text = "fda";
  std::string out_path;
  std::string ber_format;
  std::uint64_t min_errors = 0;
  unsigned workers = 1;
  auto* ber = app.add_subcommand("ber", "Monte Carlo bit error rate sweep over AWGN");
  ber->add_option("--level", level, "recursion level (>= 2)")->required();
  auto* snr_opt = ber->add_option("--snr", snr_text, "Eb/N0 grid in dB as start:step:stop");
  auto* sigma_opt = ber->add_option("--sigma", sigma_text, "comma-separated per-chip noise sigmas");
  snr_opt->excludes(sigma_opt);
  ber->add_option("--trials", trials, "trials per point (cap when --min-errors is set)");
  ber->add_option("--seed", seed, "random seed");
  ber->add_option("--decoders", decoders_text, "comma-separated subset of fda,ml");
  ber->add_option("--out", out_path, "output file (default: CSV on standard output)");
  ber->add_option("--format", ber_format, "csv or json (default from --out extension)")
      ->check(CLI::IsMember({"csv", "json"}));
  ber->add_option("--min-errors", min_errors, "stop a point once every decoder has this many bit errors");
  ber->add_option("--workers", workers, std::string("worker threads (overridden by ") + kWorkersEnv + ")");
  ber->add_option("--amplitude", amplitude, "signal amplitude");

  std::string mode = "analytic";
  std::uint64_t samples = 0;
  auto* cx = app.add_subcommand("complexity", "average comparison counts of the fast decoder");
  cx->add_option("--level", level, "recursion level (>= 2)")->required();
  cx->add_option("--mode", mode, "analytic, empirical or both")
      ->check(CLI::IsMember({"analytic", "empirical", "both"}));
  cx->add_option("--samples", samples, "sample this many random words instead of enumerating all");
  cx->add_option("--seed", seed, "random seed for sampling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (gen->parsed()) {
      const TernaryCodebook c = build_codebook(level);
      out << (format == "json" ? to_json(c) + "\n" : to_csv(c.matrix));
    } else if (verify->parsed()) {
      const TernaryMatrix m = matrix_path.empty() ? build_codebook(level).matrix : read_csv_matrix(matrix_path);
      const UdWitness w = verify_ud(m, max_cols);
      if (w.verdict) {
        out << "uniquely decodable: yes (" << m.rows() << "x" << m.cols() << ")\n";
      } else {
        out << "uniquely decodable: no\nwitness:";
        for (int d : *w.counterexample) out << ' ' << d;
        out << '\n';
        return 1;
      }
    } else if (ft->parsed()) {
      const FtSearchResult r = max_ud_columns(length);
      out << "length " << r.length << ": max columns " << r.max_columns << " (" << r.nodes_visited
          << " search nodes)\n"
          << to_csv(r.exemplar);
    } else if (decode->parsed()) {
      const TernaryCodebook c = build_codebook(level);
      const ChipVector y(parse_list(y_text));
      const DecodeOutcome d = decoder == "ml" ? ml_decode(c, y, amplitude) : fda_decode(c, y, amplitude);
      out << "word: " << format_word(d.word) << "\ncomparisons: " << d.comparisons << '\n';
      if (!d.consistent) out << "note: counts were clamped\n";
    } else if (ber->parsed()) {
      SimConfig cfg;
      cfg.level = level;
      if (!sigma_text.empty()) {
        cfg.snr_convention = SnrConvention::RawSigma;
        cfg.grid = parse_list(sigma_text);
      } else if (!snr_text.empty()) {
        cfg.grid = parse_range(snr_text);
      } else {
        throw std::invalid_argument("ber needs --snr or --sigma");
      }
      cfg.trials_per_point = trials;
      cfg.rng_seed = seed;
      cfg.decoders.clear();
      for (const auto& name : split(decoders_text, ',')) cfg.decoders.push_back(parse_decoder(name));
      cfg.amplitude = amplitude;
      cfg.workers = workers;
      cfg.min_errors = min_errors;
      const BerCurve curve = run_ber_sweep(cfg);
      std::string fmt = ber_format;
      if (fmt.empty())
        fmt = out_path.size() >= 5 && out_path.compare(out_path.size() - 5, 5, ".json") == 0 ? "json" : "csv";
      const OutputFormat of = fmt == "json" ? OutputFormat::Json : OutputFormat::Csv;
      if (out_path.empty()) {
        if (of == OutputFormat::Json)
          out << to_json(curve);
        else
          write_csv(curve, out);
      } else {
        emit_results(curve, of, out_path);
      }
    } else if (cx->parsed()) {
      const ComplexityMode m = mode == "analytic"    ? ComplexityMode::Analytic
                               : mode == "empirical" ? ComplexityMode::Empirical
                                                     : ComplexityMode::Both;
      SampleMode sampling = SampleMode::all();
      if (samples > 0)
        sampling = SampleMode::sampled(samples, seed);
      else if (codebook_cols(level) > kDefaultUdColumnBound)
        sampling = SampleMode::sampled(100000, seed);
      out << to_json(complexity_report(level, m, sampling)) << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace udcdma
