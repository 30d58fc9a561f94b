#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "udcdma/codebook.hpp"

namespace udcdma {

// K user bits, each exactly -1 or +1.
class AntipodalWord {
 public:
  AntipodalWord() = default;
  explicit AntipodalWord(std::vector<std::int8_t> bits);

  static AntipodalWord filled(std::size_t k, int value);
  // Bit j of `index` (j = 0 is the last user) set means +1.
  static AntipodalWord from_index(std::uint64_t index, std::size_t k);

  std::size_t size() const { return bits_.size(); }
  int operator[](std::size_t j) const { return bits_[j]; }
  std::span<const std::int8_t> bits() const { return bits_; }
  std::size_t count_negative() const;

  bool operator==(const AntipodalWord& other) const = default;

 private:
  std::vector<std::int8_t> bits_;
};

// L received (or transmitted) chip values.
class ChipVector {
 public:
  ChipVector() = default;
  explicit ChipVector(std::vector<double> chips);

  std::size_t size() const { return chips_.size(); }
  double operator[](std::size_t r) const { return chips_[r]; }
  std::span<const double> values() const { return chips_; }

  bool operator==(const ChipVector& other) const = default;

 private:
  std::vector<double> chips_;
};

struct ChannelConfig {
  double amplitude = 1.0;
  double noise_sigma = 0.0;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

// Addresses one independent noise realisation: (stream, trial) under a config's seed.
struct NoiseStream {
  std::uint64_t stream = 0;
  std::uint64_t trial = 0;
};

// Uniform random bit generator whose whole state is derived from (seed, stream, trial).
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

 private:
  std::uint64_t state_;
};

ChipVector spread(const TernaryCodebook& c, const AntipodalWord& x, double amplitude);

ChipVector add_awgn(const ChipVector& y, const ChannelConfig& cfg, NoiseStream stream);

AntipodalWord random_word(std::size_t k, std::uint64_t seed, NoiseStream stream);

// Mean squared column norm of the matrix.
double mean_signature_energy(const TernaryMatrix& m);

// Per-chip noise deviation for a per-user Eb/N0 in dB, with Eb = A^2 * mean column energy, N0 = 2 sigma^2.
double ebn0_to_sigma(double ebn0_db, const TernaryCodebook& c, double amplitude);

}  // namespace udcdma
