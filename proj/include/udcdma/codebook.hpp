#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "udcdma/ternary_matrix.hpp"

namespace udcdma {

inline constexpr int kDefaultMaxLevel = 10;
inline constexpr std::size_t kDefaultUdColumnBound = 17;

// Thrown when an exhaustive job would exceed its configured size bound.
class CostBoundError : public std::invalid_argument {
 public:
  CostBoundError(const std::string& what, double estimated_cost)
      : std::invalid_argument(what), estimated_cost_(estimated_cost) {}
  double estimated_cost() const { return estimated_cost_; }

 private:
  double estimated_cost_;
};

class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TernaryCodebook {
  int level = 0;
  TernaryMatrix matrix;

  std::size_t rows() const { return matrix.rows(); }
  std::size_t cols() const { return matrix.cols(); }
};

// Chip count and user count of the recursive family at a given level.
std::size_t codebook_rows(int level);
std::size_t codebook_cols(int level);

TernaryCodebook build_codebook(int level, int max_level = kDefaultMaxLevel);

TernaryMatrix strip_first_row(const TernaryMatrix& m);

struct UdWitness {
  bool verdict = false;
  std::optional<std::vector<int>> counterexample;
};

// Searches {-1,0,1}^K for a nonzero d with m*d = 0, first nonzero entry fixed to +1,
// in lexicographic order with -1 < 0 < +1.
UdWitness verify_ud(const TernaryMatrix& m, std::size_t max_cols = kDefaultUdColumnBound);

struct FtSearchResult {
  int length = 0;
  int max_columns = 0;
  TernaryMatrix exemplar;
  std::uint64_t nodes_visited = 0;
};

// Largest UD ternary matrix with `length` rows, for 2 <= length <= 4.
FtSearchResult max_ud_columns(int length);

std::string to_csv(const TernaryMatrix& m);
std::string to_json(const TernaryCodebook& c);

}  // namespace udcdma
