#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace udcdma {

// Dense L x K matrix over {-1, 0, +1}, row-major, one signed byte per entry.
class TernaryMatrix {
 public:
  TernaryMatrix() = default;
  TernaryMatrix(std::size_t rows, std::size_t cols);

  static TernaryMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  int at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, int value);

  const std::int8_t* row_data(std::size_t r) const { return data_.data() + r * cols_; }
  std::vector<int> column(std::size_t c) const;
  std::vector<std::vector<int>> to_rows() const;

  // Matrix-vector product with an integer vector of length cols().
  std::vector<long long> multiply(const std::vector<int>& v) const;

  bool operator==(const TernaryMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int8_t> data_;
};

}  // namespace udcdma
