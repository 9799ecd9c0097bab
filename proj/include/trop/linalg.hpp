#pragma once

// Dense exact matrices and the elimination toolkit the rest of the library
// is built on.  Sizes here are tiny (ambient dimension <= ~6), so the
// implementations favour clarity and determinism over asymptotics.

#include "trop/numeric.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace trop {

template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows, size_t cols) {
    Matrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("ragged matrix rows");
      for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(size_t i) const {
    std::vector<T> out(cols_);
    for (size_t j = 0; j < cols_; ++j) out[j] = (*this)(i, j);
    return out;
  }

  void set_row(size_t i, const std::vector<T>& v) {
    for (size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }

  void append_row(const std::vector<T>& v) {
    if (v.size() != cols_ && rows_ != 0) throw std::invalid_argument("bad row length");
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }

  Matrix transposed() const {
    Matrix m(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

 private:
  size_t rows_, cols_;
  std::vector<T> data_;
};

using IntMat = Matrix<Int>;
using RatMat = Matrix<Rat>;

// ---- basic vector helpers -------------------------------------------------

inline Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const IntVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

inline bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline RatVec to_rat(const IntVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

inline RatMat to_rat(const IntMat& m) {
  RatMat out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = Rat(m(i, j));
  return out;
}

inline IntVec vec_sub(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline RatVec vec_sub(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline RatVec vec_add(const RatVec& a, const RatVec& b) {
  RatVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline IntVec vec_add(const IntVec& a, const IntVec& b) {
  IntVec out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline RatVec vec_scale(const Rat& c, const RatVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = c * v[i];
  return out;
}

// ---- elimination ----------------------------------------------------------

struct Rref {
  RatMat mat;                  // reduced row echelon form
  std::vector<size_t> pivots;  // pivot column per nonzero row
  size_t rank = 0;
};

// Deterministic reduced row echelon form: pivots are the first nonzero entry
// scanning columns left to right, rows top to bottom.
Rref rref(const RatMat& m);

size_t rank_of(const RatMat& m);
size_t rank_of(const IntMat& m);

// Basis of the right kernel {x : m x = 0}, one vector per free column, in
// column order.  Entries are rationals.
std::vector<RatVec> kernel_basis(const RatMat& m);

// Determinant by exact Gaussian elimination; matrix must be square.
Rat det(const RatMat& m);
Int det(const IntMat& m);

// Inverse of a nonsingular square rational matrix.
RatMat inverse(const RatMat& m);

// Solves m x = b; returns std::nullopt when inconsistent.  When the system is
// underdetermined the free variables are set to zero (deterministically).
std::optional<RatVec> solve(const RatMat& m, const RatVec& b);

}  // namespace trop
