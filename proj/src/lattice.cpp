#include "trop/lattice.hpp"

#include <cstdlib>

namespace trop {

namespace {

// floor division for exact integers (gmp `/` truncates toward zero)
Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

SmithForm smith_normal_form(const IntMat& m) {
  const size_t rows = m.rows(), cols = m.cols();
  SmithForm f{IntMat::identity(rows), m, IntMat::identity(cols)};
  IntMat& u = f.u;
  IntMat& d = f.d;
  IntMat& v = f.v;

  // Elementary operations keep the invariant m == u * d * v.
  auto row_swap = [&](size_t i, size_t j) {
    for (size_t c = 0; c < cols; ++c) std::swap(d(i, c), d(j, c));
    for (size_t r = 0; r < rows; ++r) std::swap(u(r, i), u(r, j));
  };
  auto col_swap = [&](size_t i, size_t j) {
    for (size_t r = 0; r < rows; ++r) std::swap(d(r, i), d(r, j));
    for (size_t c = 0; c < cols; ++c) std::swap(v(i, c), v(j, c));
  };
  auto row_negate = [&](size_t i) {
    for (size_t c = 0; c < cols; ++c) d(i, c) = -d(i, c);
    for (size_t r = 0; r < rows; ++r) u(r, i) = -u(r, i);
  };
  // d: row i += t * row j;  compensate u: col j -= t * col i
  auto row_add = [&](size_t i, size_t j, const Int& t) {
    for (size_t c = 0; c < cols; ++c) d(i, c) += t * d(j, c);
    for (size_t r = 0; r < rows; ++r) u(r, j) -= t * u(r, i);
  };
  // d: col j += t * col i;  compensate v: row i -= t * row j
  auto col_add = [&](size_t j, size_t i, const Int& t) {
    for (size_t r = 0; r < rows; ++r) d(r, j) += t * d(r, i);
    for (size_t c = 0; c < cols; ++c) v(i, c) -= t * v(j, c);
  };

  const size_t steps = rows < cols ? rows : cols;
  for (size_t k = 0; k < steps; ++k) {
    for (;;) {
      // smallest |entry| in the trailing submatrix, row-major tie break
      size_t pi = rows, pj = cols;
      Int best = 0;
      for (size_t i = k; i < rows; ++i)
        for (size_t j = k; j < cols; ++j) {
          if (d(i, j) == 0) continue;
          const Int a = abs_int(d(i, j));
          if (pi == rows || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) break;  // trailing submatrix is zero
      if (pi != k) row_swap(k, pi);
      if (pj != k) col_swap(k, pj);

      bool clean = true;
      for (size_t i = k + 1; i < rows; ++i) {
        if (d(i, k) == 0) continue;
        row_add(i, k, -(d(i, k) / d(k, k)));
        if (d(i, k) != 0) clean = false;  // Euclid remainder, pick a smaller pivot next pass
      }
      for (size_t j = k + 1; j < cols; ++j) {
        if (d(k, j) == 0) continue;
        col_add(j, k, -(d(k, j) / d(k, k)));
        if (d(k, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility chain: fold in any entry the pivot does not divide
      bool divides_all = true;
      for (size_t i = k + 1; i < rows && divides_all; ++i)
        for (size_t j = k + 1; j < cols && divides_all; ++j)
          if (d(i, j) % d(k, k) != 0) {
            row_add(k, i, Int(1));
            divides_all = false;
          }
      if (divides_all) break;
    }
    if (d(k, k) < 0) row_negate(k);
  }
  return f;
}

IntMat hermite_basis(const IntMat& m) {
  IntMat a = m;
  const size_t rows = a.rows(), cols = a.cols();
  auto row_swap = [&](size_t i, size_t j) {
    for (size_t c = 0; c < cols; ++c) std::swap(a(i, c), a(j, c));
  };
  auto row_sub = [&](size_t i, size_t j, const Int& t) {
    if (t == 0) return;
    for (size_t c = 0; c < cols; ++c) a(i, c) -= t * a(j, c);
  };

  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid in column c until a single nonzero survives at row r
    for (;;) {
      size_t piv = rows;
      Int best = 0;
      for (size_t i = r; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        const Int v = abs_int(a(i, c));
        if (piv == rows || v < best) {
          best = v;
          piv = i;
        }
      }
      if (piv == rows) break;
      if (piv != r) row_swap(r, piv);
      bool clean = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        row_sub(i, r, a(i, c) / a(r, c));
        if (a(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0)
      for (size_t j = 0; j < cols; ++j) a(r, j) = -a(r, j);
    for (size_t i = 0; i < r; ++i) row_sub(i, r, floor_div(a(i, c), a(r, c)));
    ++r;
  }

  IntMat out(r, cols);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < cols; ++j) out(i, j) = a(i, j);
  return out;
}

IntMat saturate(const IntMat& m) {
  const SmithForm f = smith_normal_form(m);
  size_t rank = 0;
  const size_t steps = m.rows() < m.cols() ? m.rows() : m.cols();
  for (size_t k = 0; k < steps; ++k)
    if (f.d(k, k) != 0) ++rank;
  // rows of v matching nonzero diagonal entries span the saturation
  IntMat basis(rank, m.cols());
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < m.cols(); ++j) basis(i, j) = f.v(i, j);
  return hermite_basis(basis);
}

IntVec primitive_generator(const RatVec& v) {
  if (is_zero(v)) throw DomainError("primitive_generator: zero vector");
  Int scale = 1;
  for (const auto& x : v) scale = lcm(scale, rat_den(x));
  IntVec w(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    const Rat s = v[i] * Rat(scale);
    w[i] = rat_num(s);
  }
  Int g = 0;
  for (const auto& x : w) g = gcd(g, x);
  for (auto& x : w) x /= g;
  return w;
}

IntVec primitive_generator(const IntVec& v) { return primitive_generator(to_rat(v)); }

Int lattice_index(const IntMat& b1, const IntMat& b2) {
  if (b1.cols() != b2.cols()) throw DomainError("lattice_index: ambient dimensions differ");
  const size_t n = b1.cols();
  const IntMat s1 = saturate(b1);
  const IntMat s2 = saturate(b2);
  if (s1.rows() + s2.rows() != n)
    throw DomainError("lattice_index: spans are not of complementary rank");
  IntMat stacked(n, n);
  for (size_t i = 0; i < s1.rows(); ++i)
    for (size_t j = 0; j < n; ++j) stacked(i, j) = s1(i, j);
  for (size_t i = 0; i < s2.rows(); ++i)
    for (size_t j = 0; j < n; ++j) stacked(s1.rows() + i, j) = s2(i, j);
  Int d = det(stacked);
  if (d == 0) throw DomainError("lattice_index: spans intersect nontrivially");
  return d < 0 ? Int(-d) : d;
}

IntMat integral_right_inverse(const IntMat& m) {
  const size_t r = m.rows(), n = m.cols();
  if (r > n) throw DomainError("integral_right_inverse: more rows than columns");
  const SmithForm f = smith_normal_form(m);
  for (size_t k = 0; k < r; ++k)
    if (f.d(k, k) != 1) throw DomainError("integral_right_inverse: matrix is not surjective");

  // m = u d v with d = [I | 0], so s = v^{-1} [I; 0] u^{-1} satisfies m s = I.
  const RatMat vinv = inverse(to_rat(f.v));
  const RatMat uinv = inverse(to_rat(f.u));
  IntMat s(n, r);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < r; ++j) {
      Rat e = 0;
      for (size_t k = 0; k < r; ++k) e += vinv(i, k) * uinv(k, j);
      if (rat_den(e) != 1) throw std::logic_error("unimodular inverse not integral");
      s(i, j) = rat_num(e);
    }
  return s;
}

IntVec QuotientMap::apply(const IntVec& x) const {
  if (x.size() != source_dim) throw std::invalid_argument("quotient apply: bad length");
  IntVec out(target_dim, Int(0));
  for (size_t i = 0; i < target_dim; ++i)
    for (size_t j = 0; j < source_dim; ++j) out[i] += q(i, j) * x[j];
  return out;
}

RatVec QuotientMap::apply(const RatVec& x) const {
  if (x.size() != source_dim) throw std::invalid_argument("quotient apply: bad length");
  RatVec out(target_dim, Rat(0));
  for (size_t i = 0; i < target_dim; ++i)
    for (size_t j = 0; j < source_dim; ++j) out[i] += Rat(q(i, j)) * x[j];
  return out;
}

QuotientMap quotient_coordinates(const IntMat& l, size_t n) {
  if (l.rows() > 0 && l.cols() != n)
    throw std::invalid_argument("quotient_coordinates: ambient dimension mismatch");
  IntMat padded = l.rows() == 0 ? IntMat(0, n) : l;
  const IntMat s = saturate(padded);
  const size_t d = s.rows();
  if (d == n) throw DomainError("quotient_coordinates: subspace is the whole space");

  QuotientMap qm;
  qm.source_dim = n;
  qm.target_dim = n - d;
  if (d == 0) {
    qm.q = IntMat::identity(n);
    return qm;
  }

  // s = u * diag(1..1) * v with v unimodular, so the first d rows of v span
  // the saturation; coordinates in the row basis of v are x * v^{-1}, and the
  // quotient keeps the last n-d of them.
  const SmithForm f = smith_normal_form(s);
  const RatMat w = inverse(to_rat(f.v));
  IntMat q(n - d, n);
  for (size_t j = d; j < n; ++j)
    for (size_t i = 0; i < n; ++i) {
      const Rat e = w(i, j);
      if (rat_den(e) != 1) throw std::logic_error("unimodular inverse not integral");
      q(j - d, i) = rat_num(e);
    }
  qm.q = hermite_basis(q);
  if (qm.q.rows() != n - d) throw std::logic_error("quotient map lost rank");
  return qm;
}

}  // namespace trop
