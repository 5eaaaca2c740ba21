#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "potentia/errors.hpp"

namespace potentia {

/// Zero-test tolerance. A residual r counts as zero when
/// |r| <= abs_eps + rel_scale * scale, where scale is the largest input
/// magnitude involved in the computation being checked.
struct Tolerance {
  double abs_eps = 1e-9;
  double rel_scale = 1e-12;

  Tolerance() = default;
  Tolerance(double abs, double rel) : abs_eps(abs), rel_scale(rel) {
    if (!(abs >= 0.0) || !(rel >= 0.0)) {
      throw DimensionError("Tolerance: abs_eps and rel_scale must be >= 0");
    }
  }

  double threshold(double scale) const {
    return abs_eps + rel_scale * std::abs(scale);
  }
};

/// Dense real matrix, row-major, immutable-by-convention value type.
/// All structured builders below emit exact small integers, so identity
/// tests on their compositions hold with exact floating-point equality.
class Matrix {
 public:
  /// Hard cap on entries per matrix; rejects absurd (n, k) combinations early.
  static constexpr std::size_t max_entries = 4'000'000;

  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols) {
    check_capacity(rows, cols);
    data_.assign(rows * cols, fill);
  }

  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != c) {
        throw DimensionError("Matrix::from_rows: ragged row lengths");
      }
      std::size_t j = 0;
      for (double v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  static Matrix identity(std::size_t k) {
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix ones(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols, 1.0);
  }

  /// Logical vector delta_k^i: the i-th column of I_k (i is 1-based, as in
  /// the usual game-theoretic notation; delta_k^k is the last column).
  static Matrix unit_column(std::size_t k, std::size_t index_1based) {
    if (index_1based < 1 || index_1based > k) {
      throw DimensionError("unit_column: index out of range");
    }
    Matrix m(k, 1);
    m(index_1based - 1, 0) = 1.0;
    return m;
  }

  static Matrix column(std::span<const double> v) {
    Matrix m(v.size(), 1);
    std::copy(v.begin(), v.end(), m.data_.begin());
    return m;
  }

  static Matrix row_vector(std::span<const double> v) {
    Matrix m(1, v.size());
    std::copy(v.begin(), v.end(), m.data_.begin());
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  const std::vector<double>& data() const { return data_; }

  /// Entries in row-major order (for a column vector this is the vector itself).
  std::vector<double> to_vector() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix operator+(const Matrix& o) const {
    require_same_shape(o, "+");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    require_same_shape(o, "-");
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }

  Matrix operator-() const {
    Matrix r = *this;
    for (double& v : r.data_) v = -v;
    return r;
  }

  Matrix operator*(double s) const {
    Matrix r = *this;
    for (double& v : r.data_) v *= s;
    return r;
  }

  friend Matrix operator*(double s, const Matrix& m) { return m * s; }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) {
      throw DimensionError("Matrix multiply: " + shape_string() + " times " +
                           o.shape_string());
    }
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t k = 0; k < cols_; ++k) {
        const double a = (*this)(i, k);
        if (a == 0.0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) {
          r(i, j) += a * o(k, j);
        }
      }
    }
    return r;
  }

  bool operator==(const Matrix& o) const = default;

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
  }

  std::string shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

 private:
  static void check_capacity(std::size_t rows, std::size_t cols) {
    if (rows != 0 && cols > max_entries / rows) {
      throw CapacityError("matrix of " + std::to_string(rows) + "x" +
                          std::to_string(cols) + " exceeds the entry cap of " +
                          std::to_string(max_entries));
    }
  }

  void require_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string("Matrix ") + op + ": shape mismatch " +
                           shape_string() + " vs " + o.shape_string());
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Kronecker product A (x) B.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const double v = a(ia, ja);
      if (v == 0.0) continue;
      for (std::size_t ib = 0; ib < b.rows(); ++ib)
        for (std::size_t jb = 0; jb < b.cols(); ++jb)
          r(ia * b.rows() + ib, ja * b.cols() + jb) = v * b(ib, jb);
    }
  return r;
}

/// Kronecker product of a list of factors, left to right.
inline Matrix kron_all(std::span<const Matrix> factors) {
  if (factors.empty()) return Matrix::identity(1);
  Matrix r = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) r = kron(r, factors[i]);
  return r;
}

inline Matrix hstack(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack: row count mismatch");
  Matrix r(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
  }
  return r;
}

inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.cols()) throw DimensionError("vstack: column count mismatch");
  Matrix r(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) r(a.rows() + i, j) = b(i, j);
  return r;
}

/// Assemble a matrix from a grid of blocks. Default-constructed (empty)
/// blocks stand for zero blocks; their size is inferred from the non-empty
/// blocks sharing their block row and block column.
inline Matrix assemble_blocks(const std::vector<std::vector<Matrix>>& grid) {
  const std::size_t block_rows = grid.size();
  if (block_rows == 0) return {};
  const std::size_t block_cols = grid[0].size();
  std::vector<std::size_t> heights(block_rows, 0), widths(block_cols, 0);
  for (std::size_t bi = 0; bi < block_rows; ++bi) {
    if (grid[bi].size() != block_cols) {
      throw DimensionError("assemble_blocks: ragged block grid");
    }
    for (std::size_t bj = 0; bj < block_cols; ++bj) {
      const Matrix& blk = grid[bi][bj];
      if (blk.empty()) continue;
      if (heights[bi] == 0) heights[bi] = blk.rows();
      if (widths[bj] == 0) widths[bj] = blk.cols();
      if (heights[bi] != blk.rows() || widths[bj] != blk.cols()) {
        throw DimensionError("assemble_blocks: inconsistent block sizes");
      }
    }
  }
  for (std::size_t h : heights)
    if (h == 0) throw DimensionError("assemble_blocks: block row of unknown height");
  for (std::size_t w : widths)
    if (w == 0) throw DimensionError("assemble_blocks: block column of unknown width");

  std::size_t total_rows = 0, total_cols = 0;
  for (std::size_t h : heights) total_rows += h;
  for (std::size_t w : widths) total_cols += w;
  Matrix r(total_rows, total_cols);
  std::size_t row0 = 0;
  for (std::size_t bi = 0; bi < block_rows; ++bi) {
    std::size_t col0 = 0;
    for (std::size_t bj = 0; bj < block_cols; ++bj) {
      const Matrix& blk = grid[bi][bj];
      if (!blk.empty()) {
        for (std::size_t i = 0; i < blk.rows(); ++i)
          for (std::size_t j = 0; j < blk.cols(); ++j)
            r(row0 + i, col0 + j) = blk(i, j);
      }
      col0 += widths[bj];
    }
    row0 += heights[bi];
  }
  return r;
}

/// Row-major vectorization V_r(X): stacks the rows of X into one column.
inline Matrix vec_rows(const Matrix& x) {
  Matrix v(x.rows() * x.cols(), 1);
  for (std::size_t i = 0; i < x.size(); ++i) v(i, 0) = x.data()[i];
  return v;
}

/// Inverse of vec_rows for the given target shape.
inline Matrix unvec_rows(const Matrix& v, std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols) {
    throw DimensionError("unvec_rows: length " + std::to_string(v.size()) +
                         " does not match shape " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  Matrix x(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) x(i, j) = v.data()[i * cols + j];
  return x;
}

inline std::vector<double> mat_vec(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) {
    throw DimensionError("mat_vec: matrix " + a.shape_string() +
                         " times vector of length " + std::to_string(x.size()));
  }
  std::vector<double> y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

inline double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// B_k = [I_{k-1}, -1_{k-1}]: the (k-1) x k alternating-difference operator.
/// Its kernel is exactly the span of the all-ones vector.
inline Matrix boundary_matrix(std::size_t k) {
  if (k < 2) throw DimensionError("boundary_matrix: requires k >= 2");
  Matrix b(k - 1, k);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    b(i, i) = 1.0;
    b(i, k - 1) = -1.0;
  }
  return b;
}

/// D_k = [I_{k-1}, 0]: keeps the first k-1 coordinates.
inline Matrix selector_matrix(std::size_t k) {
  if (k < 2) throw DimensionError("selector_matrix: requires k >= 2");
  Matrix d(k - 1, k);
  for (std::size_t i = 0; i + 1 < k; ++i) d(i, i) = 1.0;
  return d;
}

/// H_k = I_k - (1/k) 1 1^T: the symmetric idempotent projector that removes
/// the mean of a k-vector.
inline Matrix centering_matrix(std::size_t k) {
  if (k < 1) throw DimensionError("centering_matrix: requires k >= 1");
  Matrix h(k, k, -1.0 / static_cast<double>(k));
  for (std::size_t i = 0; i < k; ++i) h(i, i) += 1.0;
  return h;
}

}  // namespace potentia
