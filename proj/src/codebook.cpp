#include "udcdma/codebook.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace udcdma {

std::size_t codebook_rows(int level) {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  return level == 1 ? 2 : std::size_t{1} << level;
}

std::size_t codebook_cols(int level) {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  if (level == 1) return 3;
  if (level == 2) return 8;
  return 2 * codebook_cols(level - 1) + 1;
}

namespace {

TernaryMatrix level_one() { return TernaryMatrix::from_rows({{1, 1, 1}, {1, 0, -1}}); }

TernaryMatrix level_two() {
  return TernaryMatrix::from_rows({{1, 1, 1, 1, 1, 1, 1, 1},
                                   {1, 1, 1, 1, 0, -1, -1, -1},
                                   {1, 1, 0, -1, 0, 1, 0, -1},
                                   {1, 0, 0, -1, 0, -1, 0, 1}});
}

// [ 1 ... 1   1   1 ... 1 ]
// [ 1 ... 1   0  -1 ... -1]
// [  Chat     0     0     ]
// [   0       0   Chat    ]
TernaryMatrix extend(const TernaryMatrix& prev) {
  const TernaryMatrix tail = strip_first_row(prev);
  const std::size_t kp = prev.cols();
  const std::size_t half = prev.rows();
  TernaryMatrix m(2 * half, 2 * kp + 1);
  for (std::size_t c = 0; c < m.cols(); ++c) m.set(0, c, 1);
  for (std::size_t c = 0; c < kp; ++c) {
    m.set(1, c, 1);
    m.set(1, kp + 1 + c, -1);
  }
  for (std::size_t r = 0; r < tail.rows(); ++r) {
    for (std::size_t c = 0; c < kp; ++c) {
      m.set(2 + r, c, tail.at(r, c));
      m.set(half + 1 + r, kp + 1 + c, tail.at(r, c));
    }
  }
  return m;
}

}  // namespace

TernaryCodebook build_codebook(int level, int max_level) {
  if (level < 1) throw std::invalid_argument("level must be >= 1");
  if (level > max_level)
    throw std::invalid_argument("level " + std::to_string(level) + " exceeds configured maximum " +
                                std::to_string(max_level));
  if (level == 1) return {1, level_one()};
  TernaryMatrix m = level_two();
  for (int i = 3; i <= level; ++i) m = extend(m);
  return {level, std::move(m)};
}

TernaryMatrix strip_first_row(const TernaryMatrix& m) {
  if (m.rows() < 2) throw std::invalid_argument("cannot strip the only row of a matrix");
  TernaryMatrix out(m.rows() - 1, m.cols());
  for (std::size_t r = 1; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.set(r - 1, c, m.at(r, c));
  return out;
}

namespace {

class NullspaceSearch {
 public:
  explicit NullspaceSearch(const TernaryMatrix& m)
      : rows_(m.rows()), cols_(m.cols()), col_major_(rows_ * cols_),
        remaining_((cols_ + 1) * rows_, 0), sums_((cols_ + 1) * rows_, 0), digits_(cols_, 0) {
    for (std::size_t c = 0; c < cols_; ++c)
      for (std::size_t r = 0; r < rows_; ++r) col_major_[c * rows_ + r] = m.at(r, c);
    // remaining_[k] bounds how much columns k.. can still move each row sum.
    for (std::size_t k = cols_; k-- > 0;)
      for (std::size_t r = 0; r < rows_; ++r)
        remaining_[k * rows_ + r] = remaining_[(k + 1) * rows_ + r] + std::abs(col_major_[k * rows_ + r]);
  }

  std::optional<std::vector<int>> run() {
    if (descend(0, false)) return digits_;
    return std::nullopt;
  }

 private:
  bool descend(std::size_t depth, bool nonzero) {
    const long* sum = &sums_[depth * rows_];
    const long* rem = &remaining_[depth * rows_];
    for (std::size_t r = 0; r < rows_; ++r)
      if (std::labs(sum[r]) > rem[r]) return false;
    if (depth == cols_) return nonzero;

    static constexpr int kAll[] = {-1, 0, 1};
    static constexpr int kLeading[] = {0, 1};
    const int* begin = nonzero ? kAll : kLeading;
    const int count = nonzero ? 3 : 2;
    const int* col = &col_major_[depth * rows_];
    long* next = &sums_[(depth + 1) * rows_];
    for (int i = 0; i < count; ++i) {
      const int d = begin[i];
      digits_[depth] = d;
      for (std::size_t r = 0; r < rows_; ++r) next[r] = sum[r] + d * col[r];
      if (descend(depth + 1, nonzero || d != 0)) return true;
    }
    digits_[depth] = 0;
    return false;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<int> col_major_;
  std::vector<long> remaining_;
  std::vector<long> sums_;
  std::vector<int> digits_;
};

}  // namespace

UdWitness verify_ud(const TernaryMatrix& m, std::size_t max_cols) {
  if (m.cols() > max_cols) {
    const double cost = std::pow(3.0, static_cast<double>(m.cols())) / 2.0;
    std::ostringstream msg;
    msg << "UD check over " << m.cols() << " columns needs about " << cost
        << " candidate vectors; bound is " << max_cols << " columns";
    throw CostBoundError(msg.str(), cost);
  }
  if (m.cols() == 0) return {true, std::nullopt};
  auto found = NullspaceSearch(m).run();
  if (found) return {false, std::move(found)};
  return {true, std::nullopt};
}

namespace {

// Set of all {-1,0,1}-combinations of chosen columns, as a bitset over the box [-H,H]^L.
class SubsetSumSearch {
 public:
  static constexpr int kHalfWidth = 10;

  explicit SubsetSumSearch(int length) : length_(length) {
    const long base = 2 * kHalfWidth + 1;
    long stride = 1;
    for (int r = 0; r < length; ++r) {
      strides_.push_back(stride);
      stride *= base;
    }
    bits_ = static_cast<std::size_t>(stride);
    words_ = (bits_ + 63) / 64;
    for (long c = 0; c < pow3(length); ++c) {
      std::vector<int> col(length);
      long v = c;
      for (int r = length - 1; r >= 0; --r) {
        col[r] = static_cast<int>(v % 3) - 1;
        v /= 3;
      }
      // canonical sign: first nonzero entry positive
      int lead = 0;
      for (int x : col)
        if (x != 0) {
          lead = x;
          break;
        }
      if (lead == 1) columns_.push_back(col);
    }
    for (const auto& col : columns_) {
      long off = 0;
      for (int r = 0; r < length; ++r) off += col[r] * strides_[r];
      offsets_.push_back(off);
    }
    centre_ = 0;
    for (int r = 0; r < length; ++r) centre_ += kHalfWidth * strides_[r];
  }

  FtSearchResult run() {
    std::vector<std::uint64_t> sigma(words_, 0);
    set_bit(sigma, centre_);
    std::vector<int> cand(columns_.size());
    for (std::size_t i = 0; i < cand.size(); ++i) cand[i] = static_cast<int>(i);
    descend(sigma, cand);

    FtSearchResult res;
    res.length = length_;
    res.max_columns = static_cast<int>(best_.size());
    res.exemplar = TernaryMatrix(static_cast<std::size_t>(length_), best_.size());
    for (std::size_t c = 0; c < best_.size(); ++c)
      for (int r = 0; r < length_; ++r) res.exemplar.set(r, c, columns_[best_[c]][r]);
    res.nodes_visited = nodes_;
    return res;
  }

 private:
  static long pow3(int e) {
    long v = 1;
    while (e-- > 0) v *= 3;
    return v;
  }

  static void set_bit(std::vector<std::uint64_t>& b, long i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }
  static bool test_bit(const std::vector<std::uint64_t>& b, long i) { return (b[i >> 6] >> (i & 63)) & 1u; }

  // dst |= src shifted toward higher indices by `shift` bits (negative shifts go down).
  void or_shifted(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src, long shift) const {
    const long n = static_cast<long>(words_);
    if (shift >= 0) {
      const long ws = shift >> 6;
      const int bs = static_cast<int>(shift & 63);
      for (long i = n - 1; i >= ws; --i) {
        std::uint64_t v = src[i - ws] << bs;
        if (bs != 0 && i - ws - 1 >= 0) v |= src[i - ws - 1] >> (64 - bs);
        dst[i] |= v;
      }
    } else {
      const long s = -shift;
      const long ws = s >> 6;
      const int bs = static_cast<int>(s & 63);
      for (long i = 0; i + ws < n; ++i) {
        std::uint64_t v = src[i + ws] >> bs;
        if (bs != 0 && i + ws + 1 < n) v |= src[i + ws + 1] << (64 - bs);
        dst[i] |= v;
      }
    }
  }

  void descend(const std::vector<std::uint64_t>& sigma, const std::vector<int>& cand) {
    ++nodes_;
    if (chosen_.size() > best_.size()) best_ = chosen_;
    if (static_cast<int>(chosen_.size()) >= kHalfWidth)
      throw std::logic_error("column set outgrew the subset-sum box");
    std::vector<std::uint64_t> next(words_);
    std::vector<int> next_cand;
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (chosen_.size() + (cand.size() - k) <= best_.size()) break;
      const int c = cand[k];
      next = sigma;
      or_shifted(next, sigma, offsets_[c]);
      or_shifted(next, sigma, -offsets_[c]);
      next_cand.clear();
      for (std::size_t j = k + 1; j < cand.size(); ++j)
        if (!test_bit(next, centre_ + offsets_[cand[j]])) next_cand.push_back(cand[j]);
      if (chosen_.size() + 1 + next_cand.size() <= best_.size()) continue;
      chosen_.push_back(c);
      descend(next, next_cand);
      chosen_.pop_back();
    }
  }

  int length_;
  std::vector<long> strides_;
  std::size_t bits_ = 0;
  std::size_t words_ = 0;
  long centre_ = 0;
  std::vector<std::vector<int>> columns_;
  std::vector<long> offsets_;
  std::vector<int> chosen_;
  std::vector<int> best_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

FtSearchResult max_ud_columns(int length) {
  if (length < 2 || length > 4)
    throw UnsupportedError("maximum-column search supports 2 <= length <= 4, got " + std::to_string(length));
  return SubsetSumSearch(length).run();
}

std::string to_csv(const TernaryMatrix& m) {
  std::ostringstream out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? "," : "") << m.at(r, c);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const TernaryCodebook& c) {
  nlohmann::ordered_json j;
  j["level"] = c.level;
  j["rows"] = c.rows();
  j["cols"] = c.cols();
  j["entries"] = c.matrix.to_rows();
  return j.dump();
}

}  // namespace udcdma
