#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdg/rational.hpp"

namespace sdg {

/// Dense rational matrix, row-major. A default-constructed matrix is 0x0.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) throw std::invalid_argument("matrix entry count does not match shape");
  }

  static Matrix identity(std::size_t k) {
    Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 1;
    return m;
  }

  /// E_ij with 0-based indices.
  static Matrix unit(std::size_t k, std::size_t i, std::size_t j) {
    Matrix m(k, k);
    m(i, j) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const std::vector<Rational>& entries() const { return data_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (sgn(x) != 0) return false;
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    require_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator-(Matrix a) {
    for (auto& x : a.data_) x = -x;
    return a;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t l = 0; l < a.cols_; ++l) {
        const Rational& x = a(i, l);
        if (sgn(x) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += x * b(l, j);
      }
    return out;
  }
  friend Matrix operator*(Matrix a, const Rational& r) {
    for (auto& x : a.data_) x *= r;
    return a;
  }
  friend Matrix operator*(const Rational& r, Matrix a) { return std::move(a) * r; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  /// Gauss-Jordan inverse; nullopt when singular.
  std::optional<Matrix> inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = rows_;
    Matrix a = *this;
    Matrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      while (pivot < n && sgn(a(pivot, col)) == 0) ++pivot;
      if (pivot == n) return std::nullopt;
      if (pivot != col)
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(a(pivot, j), a(col, j));
          std::swap(inv(pivot, j), inv(col, j));
        }
      const Rational p = a(col, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(col, j) /= p;
        inv(col, j) /= p;
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == col || sgn(a(r, col)) == 0) continue;
        const Rational f = a(r, col);
        for (std::size_t j = 0; j < n; ++j) {
          a(r, j) -= f * a(col, j);
          inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) out += "; ";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) out += ' ';
        out += (*this)(i, j).get_str();
      }
    }
    return out + "]";
  }

 private:
  void require_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

inline bool is_zero(const Matrix& m) { return m.is_zero(); }

inline std::ostream& operator<<(std::ostream& os, const Matrix& m) { return os << m.to_string(); }

}  // namespace sdg
