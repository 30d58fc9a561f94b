#include "udcdma/decoder.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace udcdma {

namespace {

constexpr std::size_t kHardColumnCap = 30;

// Sum over users of (+1 or -1) * value[user] for every setting of `bits` index bits,
// where index bit b drives user `first_user - b`.
template <typename T>
std::vector<T> signed_sums(const std::vector<T>& value, std::size_t first_user, std::size_t bits) {
  std::vector<T> out(std::size_t{1} << bits);
  T base{};
  for (std::size_t b = 0; b < bits; ++b) base -= value[first_user - b];
  out[0] = base;
  for (std::size_t idx = 1; idx < out.size(); ++idx) {
    const std::size_t low = idx & (~idx + 1);
    const std::size_t b = static_cast<std::size_t>(__builtin_ctzll(low));
    out[idx] = out[idx ^ low] + 2 * value[first_user - b];
  }
  return out;
}

}  // namespace

MlDecoder::MlDecoder(const TernaryCodebook& c, std::size_t max_cols)
    : rows_(c.rows()), cols_(c.cols()), low_bits_(std::min<std::size_t>(8, c.cols())) {
  const std::size_t bound = std::min(max_cols, kHardColumnCap);
  if (cols_ > bound) {
    const double cost = std::ldexp(1.0, static_cast<int>(cols_));
    std::ostringstream msg;
    msg << "ML decoding of " << cols_ << " users needs " << cost << " hypotheses per word; bound is " << bound
        << " users";
    throw CostBoundError(msg.str(), cost);
  }
  if (cols_ == 0) throw std::invalid_argument("codebook has no users");
  col_major_.resize(rows_ * cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    for (std::size_t r = 0; r < rows_; ++r) col_major_[j * rows_ + r] = c.matrix.at(r, j);

  // Per chip, the chip value of every word splits into a high-bit part and a low-bit part.
  const std::size_t high_bits = cols_ - low_bits_;
  const std::size_t n_low = std::size_t{1} << low_bits_;
  const std::size_t n_high = std::size_t{1} << high_bits;
  energy_.assign(n_low * n_high, 0.0);
  std::vector<long> low_part(n_low * rows_);
  std::vector<long> high_part(n_high * rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::vector<long> chip(cols_);
    for (std::size_t j = 0; j < cols_; ++j) chip[j] = c.matrix.at(r, j);
    const auto lo = signed_sums(chip, cols_ - 1, low_bits_);
    for (std::size_t i = 0; i < n_low; ++i) low_part[i * rows_ + r] = lo[i];
    if (high_bits > 0) {
      const auto hi = signed_sums(chip, high_bits - 1, high_bits);
      for (std::size_t i = 0; i < n_high; ++i) high_part[i * rows_ + r] = hi[i];
    } else {
      high_part[r] = 0;
    }
  }
  for (std::size_t h = 0; h < n_high; ++h) {
    for (std::size_t l = 0; l < n_low; ++l) {
      long e = 0;
      for (std::size_t r = 0; r < rows_; ++r) {
        const long v = high_part[h * rows_ + r] + low_part[l * rows_ + r];
        e += v * v;
      }
      energy_[(h << low_bits_) | l] = static_cast<double>(e);
    }
  }
}

DecodeOutcome MlDecoder::decode(const ChipVector& y, double amplitude) const {
  if (y.size() != rows_) throw std::invalid_argument("received vector length does not match codebook rows");
  if (!(amplitude > 0.0)) throw std::invalid_argument("amplitude must be positive");

  // |y - Cx|^2 = |y|^2 + |Cx|^2 - 2 <C^T y, x>; only the last two terms depend on x.
  std::vector<double> corr(cols_, 0.0);
  for (std::size_t j = 0; j < cols_; ++j) {
    double acc = 0.0;
    for (std::size_t r = 0; r < rows_; ++r) acc += col_major_[j * rows_ + r] * (y[r] / amplitude);
    corr[j] = 2.0 * acc;
  }
  const std::size_t high_bits = cols_ - low_bits_;
  const auto low = signed_sums(corr, cols_ - 1, low_bits_);
  const auto high = high_bits > 0 ? signed_sums(corr, high_bits - 1, high_bits) : std::vector<double>{0.0};

  const std::size_t n_low = low.size();
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_idx = 0;
  for (std::size_t h = 0; h < high.size(); ++h) {
    const double* e = energy_.data() + (h << low_bits_);
    const double shift = high[h];
    for (std::size_t l = 0; l < n_low; ++l) {
      const double metric = (e[l] - low[l]) - shift;
      if (metric < best) {
        best = metric;
        best_idx = (h << low_bits_) | l;
      }
    }
  }
  DecodeOutcome res;
  res.word = AntipodalWord::from_index(best_idx, cols_);
  res.comparisons = std::uint64_t{1} << cols_;
  return res;
}

DecodeOutcome ml_decode(const TernaryCodebook& c, const ChipVector& y, double amplitude, std::size_t max_cols) {
  return MlDecoder(c, max_cols).decode(y, amplitude);
}

double residual(const TernaryCodebook& c, const ChipVector& y, const AntipodalWord& x, double amplitude) {
  const ChipVector clean = spread(c, x, amplitude);
  if (y.size() != clean.size()) throw std::invalid_argument("received vector length does not match codebook rows");
  double acc = 0.0;
  for (std::size_t r = 0; r < y.size(); ++r) {
    const double d = y[r] - clean[r];
    acc += d * d;
  }
  return acc;
}

}  // namespace udcdma
