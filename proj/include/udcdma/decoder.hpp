#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "udcdma/channel.hpp"
#include "udcdma/codebook.hpp"
#include "udcdma/quantizer.hpp"

namespace udcdma {

struct DecodeOutcome {
  AntipodalWord word;
  std::uint64_t comparisons = 0;
  // false when noise pushed some intermediate count out of range and it had to be clamped
  bool consistent = true;
};

struct DeltaParams {
  int delta_min;
  int delta_max;
  int beta_min;
  int beta_max;
  int eta;
  int lambda;
};

DeltaParams delta_params(int n_l, int zeta);

// Counts of -1 entries among the left half (users 1-4) of the 8-user leaf code.
struct LeftCounts {
  int pair = 0;    // users 1 and 2 together
  int first = 0;   // user 1
  int third = 0;   // user 3
  int fourth = 0;  // user 4

  int total() const { return pair + third + fourth; }
  bool operator==(const LeftCounts&) const = default;
};

// Counts of -1 entries among the right half (users 6-8) of the leaf code.
struct RightCounts {
  int sixth = 0;
  int seventh = 0;
  int eighth = 0;

  int total() const { return sixth + seventh + eighth; }
  bool operator==(const RightCounts&) const = default;
};

struct RightDecodeResult {
  RightCounts counts;
  int comparisons = 0;
  bool consistent = true;
};

struct LeftDecodeResult {
  LeftCounts counts;
  int comparisons = 0;
  bool consistent = true;
};

struct LeafDecodeResult {
  LeftCounts left;
  RightCounts right;
  int comparisons = 0;
  bool consistent = true;
};

// Leaf sub-decoders. `y` is the unit-amplitude 4-chip leaf observation (first chip unused).
RightDecodeResult right_decode(std::span<const double> y, int n_r, const LeftCounts& left);
LeftDecodeResult left_decode(std::span<const double> y, int n_l, const RightCounts& right);
LeafDecodeResult lr_decode(std::span<const double> y, int n_l, int n_r);
DecodeOutcome sub_decode8(std::span<const double> y, int n, int n_l, int n_r);

DecodeOutcome fda_decode(const TernaryCodebook& c, const ChipVector& y, double amplitude);

inline constexpr std::size_t kDefaultMlColumnBound = 17;

// Exhaustive minimum-distance decoder over all 2^K words; ties go to the
// lexicographically smallest word (-1 < +1, user 1 first).
class MlDecoder {
 public:
  explicit MlDecoder(const TernaryCodebook& c, std::size_t max_cols = kDefaultMlColumnBound);

  DecodeOutcome decode(const ChipVector& y, double amplitude) const;
  std::size_t users() const { return cols_; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t low_bits_;
  std::vector<int> col_major_;
  std::vector<double> energy_;  // |C x|^2 indexed by word index
};

DecodeOutcome ml_decode(const TernaryCodebook& c, const ChipVector& y, double amplitude,
                        std::size_t max_cols = kDefaultMlColumnBound);

// Squared Euclidean distance between y and A*C*x.
double residual(const TernaryCodebook& c, const ChipVector& y, const AntipodalWord& x, double amplitude);

}  // namespace udcdma
