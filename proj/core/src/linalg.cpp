#include "newtosc/linalg.hpp"

#include <algorithm>
#include <utility>

namespace newtosc {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Mat Mat::from_columns(const std::vector<Tuple>& cols) {
  if (cols.empty()) return Mat();
  std::size_t r = cols[0].size();
  Mat m(r, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != r) throw DomainError("from_columns: ragged input");
    for (std::size_t i = 0; i < r; ++i) m.at(i, j) = Rat(cols[j][i]);
  }
  return m;
}

Mat Mat::from_rows(const std::vector<Tuple>& rows) {
  if (rows.empty()) return Mat();
  std::size_t c = rows[0].size();
  Mat m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DomainError("from_rows: ragged input");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Rat(rows[i][j]);
  }
  return m;
}

Mat Mat::from_rows_rat(const std::vector<RatVec>& rows) {
  if (rows.empty()) return Mat();
  std::size_t c = rows[0].size();
  Mat m(rows.size(), c);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DomainError("from_rows_rat: ragged input");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

Mat Mat::transpose() const {
  Mat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

RatVec Mat::column(std::size_t j) const {
  RatVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

RatVec Mat::row(std::size_t i) const {
  RatVec v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

Mat operator*(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw DomainError("matmul: dimension mismatch");
  Mat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

RatVec operator*(const Mat& a, const RatVec& x) {
  if (a.cols() != x.size()) throw DomainError("matvec: dimension mismatch");
  RatVec y(a.rows(), Rat(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a.at(i, j) * x[j];
  return y;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m.at(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j)
        std::swap(m.at(p, j), m.at(r, j));
    Rat inv = m.at(r, c);
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(r, j) /= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m.at(i, c) == 0) continue;
      Rat f = m.at(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j)
        m.at(i, j) -= f * m.at(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rat det(const Mat& m) {
  if (m.rows() != m.cols()) throw DomainError("det: matrix not square");
  std::size_t n = m.rows();
  if (n == 0) return Rat(1);
  Mat a = m;
  int sign = 1;
  Rat d(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a.at(p, c) == 0) ++p;
    if (p == n) return Rat(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(p, j), a.at(c, j));
      sign = -sign;
    }
    d *= a.at(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a.at(i, c) == 0) continue;
      Rat f = a.at(i, c) / a.at(c, c);
      for (std::size_t j = c; j < n; ++j) a.at(i, j) -= f * a.at(c, j);
    }
  }
  return sign < 0 ? -d : d;
}

Int det_columns(const std::vector<Tuple>& cols) {
  std::size_t n = cols.size();
  for (const Tuple& c : cols)
    if (c.size() != n) throw DomainError("det_columns: matrix not square");
  if (n == 0) return Int(1);
  // Bareiss: all divisions below are exact.
  std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = cols[j][i];
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return Int(0);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(),
                     prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign < 0 ? Int(-a[n - 1][n - 1]) : a[n - 1][n - 1];
}

RatVec solve(const Mat& a, const RatVec& b) {
  if (a.rows() != a.cols() || a.rows() != b.size())
    throw SingularMatrixError("solve: matrix not square or size mismatch");
  std::size_t n = a.rows();
  Mat aug(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n) = b[i];
  }
  std::vector<std::size_t> piv = rref(aug);
  if (piv.size() != n || (n > 0 && piv.back() == n))
    throw SingularMatrixError("solve: singular matrix");
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug.at(i, n);
  return x;
}

Mat inverse(const Mat& a) {
  if (a.rows() != a.cols()) throw SingularMatrixError("inverse: not square");
  std::size_t n = a.rows();
  Mat aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  std::vector<std::size_t> piv = rref(aug);
  if (piv.size() != n || (n > 0 && piv[n - 1] != n - 1))
    throw SingularMatrixError("inverse: singular matrix");
  Mat inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::size_t rank(const Mat& a) {
  Mat m = a;
  return rref(m).size();
}

std::vector<RatVec> nullspace(const Mat& a) {
  Mat m = a;
  std::vector<std::size_t> piv = rref(m);
  std::vector<bool> is_piv(a.cols(), false);
  for (std::size_t c : piv) is_piv[c] = true;
  std::vector<RatVec> basis;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    if (is_piv[j]) continue;
    RatVec v(a.cols(), Rat(0));
    v[j] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m.at(r, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t affine_dim(const std::vector<Tuple>& pts) {
  if (pts.empty()) throw DomainError("affine_dim: empty point set");
  std::vector<Tuple> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i)
    diffs.push_back(sub(pts[i], pts[0]));
  if (diffs.empty()) return 0;
  return rank(Mat::from_rows(diffs));
}

Tuple to_primitive_integer(const RatVec& v) {
  Int l = 1;
  for (const Rat& q : v)
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  Tuple t(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat s = v[i] * Rat(l);
    t[i] = s.get_num();
  }
  return primitive(t);
}

std::vector<Int> snf_diagonal(const std::vector<Tuple>& rows) {
  std::size_t r = rows.size();
  if (r == 0) return {};
  std::size_t c = rows[0].size();
  std::vector<std::vector<Int>> m(r, std::vector<Int>(c));
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DomainError("snf: ragged input");
    for (std::size_t j = 0; j < c; ++j) m[i][j] = rows[i][j];
  }
  std::size_t n = std::min(r, c);
  std::vector<Int> diag;
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Smallest nonzero entry of the working submatrix moves to (t,t).
      std::size_t bi = t, bj = t;
      bool found = false;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j) {
          if (m[i][j] == 0) continue;
          if (!found ||
              mpz_cmpabs(m[i][j].get_mpz_t(), m[bi][bj].get_mpz_t()) < 0) {
            bi = i;
            bj = j;
            found = true;
          }
        }
      if (!found) {
        diag.resize(n, Int(0));
        return diag;
      }
      std::swap(m[t], m[bi]);
      if (bj != t)
        for (std::size_t i = 0; i < r; ++i) std::swap(m[i][t], m[i][bj]);

      bool dirty = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (m[i][t] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][t].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t j = t; j < c; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (m[t][j] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), m[t][j].get_mpz_t(), m[t][t].get_mpz_t());
        for (std::size_t i = t; i < r; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) dirty = true;
      }
      if (dirty) continue;

      // Divisibility fixup: every remaining entry must be a multiple of the
      // pivot.
      bool fixed = true;
      for (std::size_t i = t + 1; i < r && fixed; ++i)
        for (std::size_t j = t + 1; j < c && fixed; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (std::size_t k = t; k < c; ++k) m[t][k] += m[i][k];
            fixed = false;
          }
      if (fixed) break;
    }
    Int d = abs(m[t][t]);
    diag.push_back(d);
  }
  return diag;
}

bool is_unimodular_family(const std::vector<Tuple>& gens) {
  if (gens.empty()) return true;
  std::vector<Int> d = snf_diagonal(gens);
  std::size_t nonzero = 0;
  for (const Int& x : d)
    if (x != 0) ++nonzero;
  if (nonzero != gens.size()) return false;
  for (const Int& x : d)
    if (x != 0 && x != 1) return false;
  return true;
}

void for_each_combination(std::size_t m, std::size_t k,
                          const std::function<void(
                              const std::vector<std::size_t>&)>& fn) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Tuple orthogonal_vector(const std::vector<Tuple>& rows, std::size_t n) {
  Tuple v(n, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Tuple> cols;
    cols.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      Tuple col(rows.size());
      for (std::size_t r = 0; r < rows.size(); ++r) col[r] = rows[r][j];
      cols.push_back(std::move(col));
    }
    Int d = det_columns(cols);
    v[i] = (i % 2 == 0) ? d : Int(-d);
  }
  return v;
}

}  // namespace newtosc
