#pragma once

#include <cstddef>

namespace udcdma {

// Integer grid hi, hi-step, ..., lo.
struct Constellation {
  int lo;
  int hi;
  int step;

  Constellation(int lo, int hi, int step);

  std::size_t size() const { return static_cast<std::size_t>((hi - lo) / step) + 1; }
  // k-th point counted from the hi end, k = 0 is hi.
  int point(std::size_t k) const { return hi - static_cast<int>(k) * step; }
};

struct QuantizeResult {
  int z;            // chosen point
  int zeta;         // 1-based index of z counted from the hi end
  int comparisons;  // threshold tests spent
};

// Nearest point of the grid to y, out-of-range values clamp to the end points and
// exact midpoints go to the higher point.
//
// Cost: the threshold scan starts at whichever end of the grid is nearer the chosen point,
// so the k-th point from either end costs k tests and a single-point grid costs one.
QuantizeResult quantize(double y, const Constellation& grid);
QuantizeResult quantize(double y, int lo, int hi, int step);

}  // namespace udcdma
