#include "udcdma/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace udcdma {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

int sgn(double v) { return (v > 0) - (v < 0); }

bool is_bit(int v) { return v == 0 || v == 1; }

// User 1 against user 2 when exactly one of the pair is -1, read off the fourth chip.
int split_pair(double y4, int pair, int fourth, const RightCounts& right) {
  if (pair >= 2) return 1;
  if (pair <= 0) return 0;
  return y4 / 2.0 - right.sixth - fourth + right.eighth >= -0.5 ? 0 : 1;
}

LeftCounts left_from_offset(int t, int n_l) {
  LeftCounts m;
  m.fourth = floor_div(t + n_l, 2);
  m.third = t + n_l - 2 * m.fourth;
  m.pair = n_l - m.fourth - m.third;
  return m;
}

RightCounts right_from_offset(int s, int n_r) {
  RightCounts k;
  k.eighth = floor_div(s + n_r, 2);
  k.seventh = s + n_r - 2 * k.eighth;
  k.sixth = n_r - k.eighth - k.seventh;
  return k;
}

bool valid(const LeftCounts& m) {
  return m.pair >= 0 && m.pair <= 2 && is_bit(m.third) && is_bit(m.fourth) && is_bit(m.first) &&
         m.first <= m.pair;
}

bool valid(const RightCounts& k) { return is_bit(k.sixth) && is_bit(k.seventh) && is_bit(k.eighth); }

LeftCounts clamp_left(LeftCounts m) {
  m.third = std::clamp(m.third, 0, 1);
  m.fourth = std::clamp(m.fourth, 0, 1);
  m.pair = std::clamp(m.pair, 0, 2);
  m.first = std::clamp(m.first, 0, std::min(1, m.pair));
  if (m.pair - m.first > 1) m.first = 1;
  return m;
}

RightCounts clamp_right(RightCounts k) {
  k.sixth = std::clamp(k.sixth, 0, 1);
  k.seventh = std::clamp(k.seventh, 0, 1);
  k.eighth = std::clamp(k.eighth, 0, 1);
  return k;
}

void check_leaf_input(std::span<const double> y) {
  if (y.size() != 4) throw std::invalid_argument("leaf observation must have 4 chips");
}

}  // namespace

DeltaParams delta_params(int n_l, int zeta) {
  DeltaParams p{};
  p.delta_min = -static_cast<int>(std::lround(3.0 * (n_l + 1) / 5.0));
  p.delta_max = static_cast<int>(std::lround(3.0 * n_l / 5.0)) % 2;
  p.eta = zeta + p.delta_min - p.delta_max - 1;
  p.lambda = sgn(3.1 - zeta) + 1;
  p.beta_min = p.eta >= 1 ? p.eta : 0;
  // lambda is 0 or 2, so the halving is exact
  p.beta_max = p.lambda * (zeta - 3) / 2 - 1;
  return p;
}

RightDecodeResult right_decode(std::span<const double> y, int n_r, const LeftCounts& left) {
  check_leaf_input(y);
  const double stat = (y[2] - 1.0) / 2.0 - left.fourth + left.pair;
  const QuantizeResult q = quantize(stat, -1, 1, 1);
  RightDecodeResult res;
  res.counts = right_from_offset(q.z, n_r);
  res.comparisons = q.comparisons;
  if (!valid(res.counts)) {
    res.consistent = false;
    res.counts = clamp_right(res.counts);
  }
  return res;
}

LeftDecodeResult left_decode(std::span<const double> y, int n_l, const RightCounts& right) {
  check_leaf_input(y);
  const DeltaParams p = delta_params(n_l, 1);
  const int shift = right.eighth - right.sixth;
  const QuantizeResult q = quantize((y[2] - 1.0) / 2.0, shift + p.delta_min, shift + p.delta_max, 1);
  LeftDecodeResult res;
  res.counts = left_from_offset(q.z - shift, n_l);
  res.counts.first = split_pair(y[3], res.counts.pair, res.counts.fourth, right);
  res.comparisons = q.comparisons;
  if (!valid(res.counts)) {
    res.consistent = false;
    res.counts = clamp_left(res.counts);
  }
  return res;
}

LeafDecodeResult lr_decode(std::span<const double> y, int n_l, int n_r) {
  check_leaf_input(y);
  const DeltaParams bounds = delta_params(n_l, 1);
  const Constellation grid(bounds.delta_min - 1, bounds.delta_max + 1, 1);
  const QuantizeResult q = quantize((y[2] - 1.0) / 2.0, grid);
  const int zeta_low = static_cast<int>(grid.size()) - q.zeta + 1;
  const DeltaParams p = delta_params(n_l, zeta_low);

  LeafDecodeResult res;
  res.comparisons = q.comparisons;
  auto search = [&](int from, int to) {
    double best = std::exp(10.0);
    bool found = false;
    for (int s = from; s <= to; ++s) {
      LeftCounts m = left_from_offset(q.z - s, n_l);
      RightCounts k = right_from_offset(s, n_r);
      if (!valid(k) || m.pair < 0 || m.pair > 2 || !is_bit(m.third) || !is_bit(m.fourth)) continue;
      m.first = split_pair(y[3], m.pair, m.fourth, k);
      const double d = std::abs(y[3] / 2.0 + m.first - m.fourth - k.sixth + k.eighth);
      if (d < best) {
        best = d;
        res.left = m;
        res.right = k;
        found = true;
      }
    }
    return found;
  };
  if (!search(p.beta_min - 1, p.beta_max + 2)) {
    res.consistent = false;
    if (!search(-1, 1)) {
      res.left = clamp_left(left_from_offset(q.z, n_l));
      res.right = clamp_right(right_from_offset(0, n_r));
    }
  }
  return res;
}

namespace {

// Writes the 8 leaf decisions; returns comparisons spent below the count split.
std::uint64_t decode_leaf(std::span<const double> y, int n, int n_l, int n_r, std::span<std::int8_t> out,
                          bool& consistent) {
  const int nl = std::clamp(n_l, 0, 4);
  const int nr = std::clamp(n_r, 0, 3);
  const int middle = std::clamp(n - nl - nr, 0, 1);
  if (nl != n_l || nr != n_r || middle != n - nl - nr) consistent = false;

  LeftCounts m;
  RightCounts k;
  const bool left_known = nl == 0 || nl == 4;
  const bool right_known = nr == 0 || nr == 3;
  if (nl == 4) m = {2, 1, 1, 1};
  if (nr == 3) k = {1, 1, 1};

  std::uint64_t cost = 0;
  if (left_known && !right_known) {
    const auto r = right_decode(y, nr, m);
    k = r.counts;
    cost += r.comparisons;
    consistent = consistent && r.consistent;
  } else if (right_known && !left_known) {
    const auto r = left_decode(y, nl, k);
    m = r.counts;
    cost += r.comparisons;
    consistent = consistent && r.consistent;
  } else if (!left_known && !right_known) {
    const auto r = lr_decode(y, nl, nr);
    m = r.left;
    k = r.right;
    cost += r.comparisons;
    consistent = consistent && r.consistent;
  }

  auto bit = [](int negatives) { return static_cast<std::int8_t>(1 - 2 * negatives); };
  out[0] = bit(m.first);
  out[1] = bit(m.pair - m.first);
  out[2] = bit(m.third);
  out[3] = bit(m.fourth);
  out[4] = bit(middle);
  out[5] = bit(k.sixth);
  out[6] = bit(k.seventh);
  out[7] = bit(k.eighth);
  return cost;
}

// Decodes a level-`level` block whose count n of -1 entries is already known.
// `tail` holds chips 2..L of the block at unit amplitude.
std::uint64_t decode_known(int level, int n, std::span<const double> tail, std::span<std::int8_t> out,
                           bool& consistent) {
  const int k = static_cast<int>(out.size());
  if (n <= 0 || n >= k) {
    if (n < 0 || n > k) consistent = false;
    std::fill(out.begin(), out.end(), static_cast<std::int8_t>(n <= 0 ? 1 : -1));
    return 0;
  }

  // Second chip: left block minus right block. At level 2 the blocks are 4 and 3 wide,
  // so that chip is odd and its grid is shifted by one.
  const int offset = level == 2 ? 1 : 0;
  const int r = k - std::abs(k - 2 * n);
  const QuantizeResult q = quantize(tail[0], -r - offset, r + offset, 2);
  const int a = 2 * n - (q.z - offset);
  const int n_l = floor_div(a, 4);
  const int n_r = n + floor_div(-a, 4);
  std::uint64_t cost = q.comparisons;

  if (level == 2) {
    const double leaf[4] = {0.0, tail[0], tail[1], tail[2]};
    return cost + decode_leaf(leaf, n, n_l, n_r, out, consistent);
  }

  const int kp = (k - 1) / 2;
  const std::size_t half = (tail.size() + 1) / 2;  // chips per sub-block
  const int nl = std::clamp(n_l, 0, kp);
  const int nr = std::clamp(n_r, 0, kp);
  if (nl != n_l || nr != n_r) consistent = false;

  auto left = out.subspan(0, kp);
  auto right = out.subspan(kp + 1, kp);
  cost += decode_known(level - 1, nl, tail.subspan(1, half - 1), left, consistent);
  cost += decode_known(level - 1, nr, tail.subspan(half, half - 1), right, consistent);

  long sum = 0;
  for (auto v : left) sum += v;
  for (auto v : right) sum += v;
  const long rest = (k - 2 * n) - sum;  // odd by parity, never zero
  out[kp] = static_cast<std::int8_t>(rest > 0 ? 1 : -1);
  if (n != nl + nr + (1 - out[kp]) / 2) consistent = false;
  return cost;
}

}  // namespace

DecodeOutcome sub_decode8(std::span<const double> y, int n, int n_l, int n_r) {
  check_leaf_input(y);
  std::vector<std::int8_t> bits(8);
  DecodeOutcome res;
  res.comparisons = decode_leaf(y, n, n_l, n_r, bits, res.consistent);
  res.word = AntipodalWord(std::move(bits));
  return res;
}

DecodeOutcome fda_decode(const TernaryCodebook& c, const ChipVector& y, double amplitude) {
  if (c.level < 2) throw std::invalid_argument("fast decoding needs a codebook of level 2 or more");
  if (y.size() != c.rows())
    throw std::invalid_argument("received vector has " + std::to_string(y.size()) + " chips, codebook has " +
                                std::to_string(c.rows()));
  if (!(amplitude > 0.0)) throw std::invalid_argument("amplitude must be positive");

  std::vector<double> u(y.values().begin(), y.values().end());
  for (double& v : u) v /= amplitude;

  const int k = static_cast<int>(c.cols());
  std::vector<std::int8_t> bits(c.cols());
  DecodeOutcome res;
  const QuantizeResult q = quantize(u[0], -k, k, 2);
  res.comparisons = q.comparisons;
  if (std::abs(q.z) == k) {
    std::fill(bits.begin(), bits.end(), static_cast<std::int8_t>(q.z > 0 ? 1 : -1));
  } else {
    const int n = (k - q.z) / 2;
    res.comparisons += decode_known(c.level, n, std::span<const double>(u).subspan(1), bits, res.consistent);
  }
  res.word = AntipodalWord(std::move(bits));
  return res;
}

}  // namespace udcdma
