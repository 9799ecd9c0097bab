#include "trop/linalg.hpp"

namespace trop {

Rref rref(const RatMat& m) {
  Rref out;
  out.mat = m;
  RatMat& a = out.mat;
  const size_t rows = a.rows(), cols = a.cols();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != r)
      for (size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
    const Rat inv = Rat(1) / a(r, c);
    for (size_t j = c; j < cols; ++j) a(r, j) *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rat f = a(i, c);
      for (size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

size_t rank_of(const RatMat& m) { return rref(m).rank; }

size_t rank_of(const IntMat& m) { return rank_of(to_rat(m)); }

std::vector<RatVec> kernel_basis(const RatMat& m) {
  const Rref r = rref(m);
  const size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (size_t p : r.pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RatVec v(cols, Rat(0));
    v[free] = 1;
    for (size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.mat(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rat det(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
  RatMat a = m;
  const size_t n = a.rows();
  Rat result = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t piv = n;
    for (size_t i = c; i < n; ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv == n) return Rat(0);
    if (piv != c) {
      for (size_t j = 0; j < n; ++j) std::swap(a(piv, j), a(c, j));
      result = -result;
    }
    result *= a(c, c);
    const Rat inv = Rat(1) / a(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rat f = a(i, c) * inv;
      for (size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return result;
}

Int det(const IntMat& m) {
  const Rat d = det(to_rat(m));
  if (rat_den(d) != 1) throw std::logic_error("integer determinant came out fractional");
  return rat_num(d);
}

RatMat inverse(const RatMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const size_t n = m.rows();
  RatMat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const Rref r = rref(aug);
  // Invertibility shows as pivots exactly in the first n columns.
  if (r.rank != n || r.pivots.back() >= n) throw std::invalid_argument("inverse: singular matrix");
  RatMat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = r.mat(i, n + j);
  return inv;
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  RatMat aug(m.rows(), m.cols() + 1);
  for (size_t i = 0; i < m.rows(); ++i) {
    for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  const Rref r = rref(aug);
  for (size_t p : r.pivots)
    if (p == m.cols()) return std::nullopt;  // row (0 ... 0 | nonzero)
  RatVec x(m.cols(), Rat(0));
  for (size_t i = 0; i < r.pivots.size(); ++i) x[r.pivots[i]] = r.mat(i, m.cols());
  return x;
}

}  // namespace trop
