#include "foxfree/intlinalg.hpp"

#include <algorithm>

namespace foxfree {

IntMat identity_mat(size_t n) {
  IntMat m(n, std::vector<Int>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMat mat_mul(const IntMat& a, const IntMat& b) {
  size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat c(n, std::vector<Int>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      if (a[i][t] == 0) continue;
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][t] * b[t][j];
    }
  return c;
}

std::vector<Int> mat_vec(const IntMat& a, const std::vector<Int>& x) {
  std::vector<Int> y(a.size(), 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

struct Worker {
  IntMat a, u, v;
  size_t rows, cols;

  void swap_rows(size_t i, size_t j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(size_t i, size_t j) {
    for (size_t r = 0; r < rows; ++r) std::swap(a[r][i], a[r][j]);
    for (size_t r = 0; r < v.size(); ++r) std::swap(v[r][i], v[r][j]);
  }
  void add_row(size_t src, size_t dst, const Int& k) {  // row dst += k * row src
    for (size_t c = 0; c < cols; ++c) a[dst][c] += k * a[src][c];
    for (size_t c = 0; c < u[0].size(); ++c) u[dst][c] += k * u[src][c];
  }
  void add_col(size_t src, size_t dst, const Int& k) {  // col dst += k * col src
    for (size_t r = 0; r < rows; ++r) a[r][dst] += k * a[r][src];
    for (size_t r = 0; r < v.size(); ++r) v[r][dst] += k * v[r][src];
  }
  void negate_row(size_t i) {
    for (size_t c = 0; c < cols; ++c) a[i][c] = -a[i][c];
    for (size_t c = 0; c < u[0].size(); ++c) u[i][c] = -u[i][c];
  }

  bool find_pivot(size_t t, size_t* pi, size_t* pj) {
    bool found = false;
    Int best = 0;
    for (size_t i = t; i < rows; ++i)
      for (size_t j = t; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        Int m = abs_int(a[i][j]);
        if (!found || m < best) {
          found = true;
          best = m;
          *pi = i;
          *pj = j;
        }
      }
    return found;
  }
};

}  // namespace

SmithResult smith_normal_form(IntMat a) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  Worker w{std::move(a), identity_mat(rows), identity_mat(cols), rows, cols};

  size_t t = 0;
  while (t < rows && t < cols) {
    size_t pi = t, pj = t;
    if (!w.find_pivot(t, &pi, &pj)) break;
    if (pi != t) w.swap_rows(t, pi);
    if (pj != t) w.swap_cols(t, pj);

    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (size_t i = t + 1; i < rows; ++i) {
        if (w.a[i][t] == 0) continue;
        Int q = w.a[i][t] / w.a[t][t];
        w.add_row(t, i, -q);
        if (w.a[i][t] != 0) {  // remainder became the smaller pivot
          w.swap_rows(t, i);
          dirty = true;
        }
      }
      for (size_t j = t + 1; j < cols; ++j) {
        if (w.a[t][j] == 0) continue;
        Int q = w.a[t][j] / w.a[t][t];
        w.add_col(t, j, -q);
        if (w.a[t][j] != 0) {
          w.swap_cols(t, j);
          dirty = true;
        }
      }
    }
    if (w.a[t][t] < 0) w.negate_row(t);
    ++t;
  }

  // Enforce the divisibility chain d_i | d_{i+1}.
  size_t rank = t;
  for (bool settled = false; !settled;) {
    settled = true;
    for (size_t i = 0; i + 1 < rank; ++i) {
      if (w.a[i + 1][i + 1] % w.a[i][i] == 0) continue;
      settled = false;
      // Fold entry (i+1, i+1) into position (i, i) and re-reduce the 2x2 block.
      w.add_col(i + 1, i, 1);
      while (w.a[i + 1][i] != 0) {
        Int q = w.a[i][i] / w.a[i + 1][i];
        w.add_row(i + 1, i, -q);
        if (w.a[i][i] != 0) {
          w.swap_rows(i, i + 1);
        } else {
          w.swap_rows(i, i + 1);
          break;
        }
      }
      // Clear the off-diagonal remnants of the block.
      Int q = w.a[i][i + 1] / w.a[i][i];
      w.add_col(i, i + 1, -q);
      if (w.a[i][i + 1] != 0) throw DomainError("smith divisibility pass failed");
      q = w.a[i + 1][i] / w.a[i][i];
      w.add_row(i, i + 1, -q);
      if (w.a[i][i] < 0) w.negate_row(i);
      if (w.a[i + 1][i + 1] < 0) w.negate_row(i + 1);
    }
  }

  SmithResult out;
  out.u = std::move(w.u);
  out.v = std::move(w.v);
  out.d = std::move(w.a);
  out.rank = static_cast<int>(rank);
  return out;
}

bool solve_integer(const IntMat& a, const std::vector<Int>& b, std::vector<Int>* x) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  if (b.size() != rows) throw DomainError("solve_integer dimension mismatch");
  if (cols == 0) {
    for (const Int& e : b)
      if (e != 0) return false;
    if (x) x->clear();
    return true;
  }
  SmithResult s = smith_normal_form(a);
  std::vector<Int> ub = mat_vec(s.u, b);
  std::vector<Int> y(cols, 0);
  for (size_t i = 0; i < rows; ++i) {
    Int d = (i < cols) ? s.d[i][i] : Int(0);
    if (d == 0) {
      if (ub[i] != 0) return false;
    } else {
      if (ub[i] % d != 0) return false;
      y[i] = ub[i] / d;
    }
  }
  if (x) *x = mat_vec(s.v, y);
  return true;
}

}  // namespace foxfree
