#include "udcdma/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace udcdma {

AntipodalWord::AntipodalWord(std::vector<std::int8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_)
    if (b != 1 && b != -1) throw std::invalid_argument("antipodal entries must be -1 or +1");
}

AntipodalWord AntipodalWord::filled(std::size_t k, int value) {
  return AntipodalWord(std::vector<std::int8_t>(k, static_cast<std::int8_t>(value)));
}

AntipodalWord AntipodalWord::from_index(std::uint64_t index, std::size_t k) {
  std::vector<std::int8_t> bits(k);
  for (std::size_t p = 0; p < k; ++p) bits[p] = ((index >> (k - 1 - p)) & 1u) ? 1 : -1;
  return AntipodalWord(std::move(bits));
}

std::size_t AntipodalWord::count_negative() const {
  std::size_t n = 0;
  for (auto b : bits_) n += (b < 0);
  return n;
}

ChipVector::ChipVector(std::vector<double> chips) : chips_(std::move(chips)) {
  for (double v : chips_)
    if (!std::isfinite(v)) throw std::invalid_argument("chip values must be finite");
}

void ChannelConfig::validate() const {
  if (!(amplitude > 0.0)) throw std::invalid_argument("amplitude must be positive");
  if (!(noise_sigma >= 0.0)) throw std::invalid_argument("noise sigma must be non-negative");
}

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial)
    : state_(splitmix(splitmix(splitmix(seed) ^ stream) ^ trial)) {}

CounterRng::result_type CounterRng::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ChipVector spread(const TernaryCodebook& c, const AntipodalWord& x, double amplitude) {
  if (x.size() != c.cols())
    throw std::invalid_argument("word length " + std::to_string(x.size()) + " does not match " +
                                std::to_string(c.cols()) + " users");
  std::vector<double> y(c.rows());
  const auto bits = x.bits();
  for (std::size_t r = 0; r < c.rows(); ++r) {
    const std::int8_t* row = c.matrix.row_data(r);
    long acc = 0;
    for (std::size_t j = 0; j < c.cols(); ++j) acc += row[j] * bits[j];
    y[r] = amplitude * static_cast<double>(acc);
  }
  return ChipVector(std::move(y));
}

ChipVector add_awgn(const ChipVector& y, const ChannelConfig& cfg, NoiseStream stream) {
  cfg.validate();
  if (cfg.noise_sigma == 0.0) return y;
  CounterRng rng(cfg.rng_seed, stream.stream, stream.trial);
  std::normal_distribution<double> gauss(0.0, cfg.noise_sigma);
  std::vector<double> out(y.values().begin(), y.values().end());
  for (double& v : out) v += gauss(rng);
  return ChipVector(std::move(out));
}

AntipodalWord random_word(std::size_t k, std::uint64_t seed, NoiseStream stream) {
  CounterRng rng(seed, stream.stream, stream.trial);
  std::vector<std::int8_t> bits(k);
  std::uint64_t pool = 0;
  for (std::size_t p = 0; p < k; ++p) {
    if (p % 64 == 0) pool = rng();
    bits[p] = (pool & 1u) ? 1 : -1;
    pool >>= 1;
  }
  return AntipodalWord(std::move(bits));
}

double mean_signature_energy(const TernaryMatrix& m) {
  if (m.cols() == 0) throw std::invalid_argument("matrix has no columns");
  long nonzero = 0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) nonzero += (m.at(r, c) != 0);
  return static_cast<double>(nonzero) / static_cast<double>(m.cols());
}

double ebn0_to_sigma(double ebn0_db, const TernaryCodebook& c, double amplitude) {
  if (!(amplitude > 0.0)) throw std::invalid_argument("amplitude must be positive");
  if (std::isinf(ebn0_db) && ebn0_db > 0) return 0.0;
  const double eb = amplitude * amplitude * mean_signature_energy(c.matrix);
  return std::sqrt(eb / (2.0 * std::pow(10.0, ebn0_db / 10.0)));
}

}  // namespace udcdma
