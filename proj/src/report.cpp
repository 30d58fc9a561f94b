#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "udcdma/simulation.hpp"

namespace udcdma {

namespace {

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

}  // namespace

void write_csv(const BerCurve& curve, std::ostream& out) {
  out << "snr_db,sigma,decoder,trials,bit_errors,ber,ci_low,ci_high,word_errors,wer,mean_comparisons\n";
  for (const BerPoint& p : curve.points) {
    out << (p.snr_db ? num(*p.snr_db) : std::string()) << ',' << num(p.sigma) << ',' << to_string(p.decoder) << ','
        << p.trials << ',' << p.bit_errors << ',' << num(p.ber) << ',' << num(p.ci_low) << ',' << num(p.ci_high)
        << ',' << p.word_errors << ',' << num(p.wer) << ',' << num(p.mean_comparisons) << '\n';
  }
}

std::string to_json(const BerCurve& curve) {
  using nlohmann::ordered_json;
  const SimConfig& c = curve.config;
  ordered_json cfg;
  cfg["level"] = c.level;
  cfg["grid"] = c.grid;
  cfg["trials_per_point"] = c.trials_per_point;
  cfg["seed"] = c.rng_seed;
  std::vector<std::string> decoders;
  for (auto d : c.decoders) decoders.push_back(to_string(d));
  cfg["decoders"] = decoders;
  cfg["amplitude"] = c.amplitude;
  cfg["snr_convention"] = to_string(c.snr_convention);
  cfg["min_errors"] = c.min_errors;
  cfg["trials_per_batch"] = kTrialsPerBatch;

  ordered_json points = ordered_json::array();
  for (const BerPoint& p : curve.points) {
    ordered_json j;
    j["snr_db"] = p.snr_db ? ordered_json(*p.snr_db) : ordered_json(nullptr);
    j["sigma"] = p.sigma;
    j["decoder"] = to_string(p.decoder);
    j["trials"] = p.trials;
    j["bit_errors"] = p.bit_errors;
    j["ber"] = p.ber;
    j["ci_low"] = p.ci_low;
    j["ci_high"] = p.ci_high;
    j["word_errors"] = p.word_errors;
    j["wer"] = p.wer;
    j["mean_comparisons"] = p.mean_comparisons;
    points.push_back(std::move(j));
  }
  ordered_json out;
  out["config"] = std::move(cfg);
  out["points"] = std::move(points);
  return out.dump(2) + "\n";
}

void emit_results(const BerCurve& curve, OutputFormat format, const std::string& path) {
  if (curve.points.empty()) throw std::invalid_argument("refusing to write an empty curve");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  if (format == OutputFormat::Csv)
    write_csv(curve, out);
  else
    out << to_json(curve);
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace udcdma
