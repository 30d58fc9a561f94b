#include "udcdma/ternary_matrix.hpp"

#include <stdexcept>
#include <string>

namespace udcdma {

TernaryMatrix::TernaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

TernaryMatrix TernaryMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw std::invalid_argument("matrix needs at least one row");
  TernaryMatrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_)
      throw std::invalid_argument("ragged matrix: row " + std::to_string(r) + " has wrong length");
    for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void TernaryMatrix::set(std::size_t r, std::size_t c, int value) {
  if (value < -1 || value > 1)
    throw std::invalid_argument("ternary entry out of range: " + std::to_string(value));
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  data_[r * cols_ + c] = static_cast<std::int8_t>(value);
}

std::vector<int> TernaryMatrix::column(std::size_t c) const {
  if (c >= cols_) throw std::out_of_range("column index out of range");
  std::vector<int> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

std::vector<std::vector<int>> TernaryMatrix::to_rows() const {
  std::vector<std::vector<int>> out(rows_, std::vector<int>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = at(r, c);
  return out;
}

std::vector<long long> TernaryMatrix::multiply(const std::vector<int>& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length does not match column count");
  std::vector<long long> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    const std::int8_t* row = row_data(r);
    long long acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += static_cast<long long>(row[c]) * v[c];
    out[r] = acc;
  }
  return out;
}

}  // namespace udcdma
