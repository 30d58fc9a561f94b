#include "udcdma/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace udcdma {

Constellation::Constellation(int lo_, int hi_, int step_) : lo(lo_), hi(hi_), step(step_) {
  if (step != 1 && step != 2) throw std::invalid_argument("constellation step must be 1 or 2");
  if (lo > hi || (hi - lo) % step != 0)
    throw std::invalid_argument("invalid constellation [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                "] with step " + std::to_string(step));
}

QuantizeResult quantize(double y, const Constellation& grid) {
  const long last = static_cast<long>(grid.size()) - 1;
  // distance from hi in grid steps; ceil(t - 1/2) sends exact midpoints up
  const double t = (static_cast<double>(grid.hi) - y) / grid.step;
  long k = static_cast<long>(std::ceil(std::clamp(t, -1.0, static_cast<double>(last) + 1.0) - 0.5));
  k = std::clamp(k, 0L, last);
  const int cost = last == 0 ? 1 : static_cast<int>(std::min(k, last - k)) + 1;
  return {grid.point(static_cast<std::size_t>(k)), static_cast<int>(k) + 1, cost};
}

QuantizeResult quantize(double y, int lo, int hi, int step) { return quantize(y, Constellation(lo, hi, step)); }

}  // namespace udcdma
