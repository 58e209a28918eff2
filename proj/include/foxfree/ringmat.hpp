#ifndef FOXFREE_RINGMAT_HPP
#define FOXFREE_RINGMAT_HPP

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>
#include <vector>

#include "foxfree/laurent.hpp"

namespace foxfree {

// The trivial valued domain Z: psi(0) = inf, psi(a) = 0 otherwise.  This is
// the psi_0 of the stage-0 selection.
class IntegerRing {
 public:
  using Elem = Int;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return a == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool residue_nonzero(const Elem& a) const { return a != 0; }
  Valuation valuation(const Elem& a) const { return {a == 0, 0}; }
  std::pair<Elem, Elem> ore_pair(const Elem& a, const Elem& b) const {
    if (a == 0 || b == 0) throw DomainError("ore_pair: zero input");
    return {b, a};
  }
  bool is_zero_divisor(const Elem&) const { return false; }
  std::string format(const Elem& a) const { return a.str(); }
  Elem parse(const std::string& s) const {
    std::string trimmed;
    for (char c : s)
      if (!std::isspace(static_cast<unsigned char>(c))) trimmed += c;
    if (trimmed.empty()) throw DomainError("integer parse: empty cell");
    return Int(trimmed);
  }
};

// Rectangular matrix over a domain's element type.
template <typename Domain>
struct RingMatrix {
  int rows = 0, cols = 0;
  std::vector<std::vector<typename Domain::Elem>> a;

  static RingMatrix filled(const Domain& d, int rows, int cols) {
    if (rows < 1 || cols < 1) throw DomainError("matrix dimensions must be >= 1");
    RingMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.a.assign(static_cast<size_t>(rows),
               std::vector<typename Domain::Elem>(static_cast<size_t>(cols), d.zero()));
    return m;
  }
  typename Domain::Elem& at(int i, int j) {
    return a[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  const typename Domain::Elem& at(int i, int j) const {
    return a[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  friend bool operator==(const RingMatrix&, const RingMatrix&) = default;
};

// Exactly the paper's four elementary transformations.  Scaling and the
// row-combination multiply on the RIGHT; AddScaledRow requires i < j.
enum class StepKind { SwapCols, SwapRows, ScaleRow, AddScaledRow };

template <typename Domain>
struct TransformStep {
  StepKind kind;
  int i = 0, j = 0;  // 0-based
  typename Domain::Elem factor{};
};

template <typename Domain>
using TransformLog = std::vector<TransformStep<Domain>>;

template <typename Domain>
RingMatrix<Domain> apply_elementary(const Domain& d, RingMatrix<Domain> m,
                                    const TransformStep<Domain>& s) {
  auto check_row = [&](int r) {
    if (r < 0 || r >= m.rows) throw DomainError("elementary step: row index out of range");
  };
  auto check_col = [&](int c) {
    if (c < 0 || c >= m.cols) throw DomainError("elementary step: column index out of range");
  };
  switch (s.kind) {
    case StepKind::SwapCols:
      check_col(s.i);
      check_col(s.j);
      for (int r = 0; r < m.rows; ++r) std::swap(m.at(r, s.i), m.at(r, s.j));
      break;
    case StepKind::SwapRows:
      check_row(s.i);
      check_row(s.j);
      std::swap(m.a[static_cast<size_t>(s.i)], m.a[static_cast<size_t>(s.j)]);
      break;
    case StepKind::ScaleRow:
      check_row(s.i);
      if (d.is_zero(s.factor)) throw DomainError("elementary step: scale by zero");
      for (int c = 0; c < m.cols; ++c) m.at(s.i, c) = d.mul(m.at(s.i, c), s.factor);
      break;
    case StepKind::AddScaledRow:
      check_row(s.i);
      check_row(s.j);
      if (s.i >= s.j) throw DomainError("elementary step: add-scaled-row needs i < j");
      if (d.is_zero(s.factor)) throw DomainError("elementary step: add zero multiple");
      for (int c = 0; c < m.cols; ++c)
        m.at(s.j, c) = d.add(m.at(s.j, c), d.mul(m.at(s.i, c), s.factor));
      break;
  }
  return m;
}

template <typename Domain>
RingMatrix<Domain> replay(const Domain& d, RingMatrix<Domain> m, const TransformLog<Domain>& log) {
  for (const auto& s : log) m = apply_elementary(d, std::move(m), s);
  return m;
}

template <typename Domain>
struct Triangularization {
  RingMatrix<Domain> matrix;
  TransformLog<Domain> log;
  int rank = 0;
  bool zero_divisor_pivot = false;  // some pivot was a zero divisor (torsion rings)
};

// Brings m to triangular form of some rank t (b_kk != 0 for k <= t, zeros
// left of the diagonal and in rows beyond t) with psi-minimal pivots:
// psi(b_kk) <= psi(b_kn) for n >= k.  Pivot choice: non-zero-divisors first,
// then minimal psi, ties by lowest (row, col).  Replaying the log on the
// input reproduces the output exactly.
template <typename Domain>
Triangularization<Domain> triangularize(const Domain& d, const RingMatrix<Domain>& input) {
  Triangularization<Domain> out;
  out.matrix = input;
  RingMatrix<Domain>& m = out.matrix;

  auto log_step = [&](TransformStep<Domain> s) {
    m = apply_elementary(d, std::move(m), s);
    out.log.push_back(std::move(s));
  };

  int t = 0;
  while (t < m.rows && t < m.cols) {
    bool found = false;
    int pi = t, pj = t;
    bool best_zd = false;
    Valuation best_val{};
    for (int i = t; i < m.rows; ++i) {
      for (int j = t; j < m.cols; ++j) {
        if (d.is_zero(m.at(i, j))) continue;
        bool zd = d.is_zero_divisor(m.at(i, j));
        Valuation val = d.valuation(m.at(i, j));
        bool better = false;
        if (!found) {
          better = true;
        } else if (zd != best_zd) {
          better = !zd;
        } else if (!(best_val <= val)) {
          better = true;
        }
        // Lowest (row, col) among ties comes free from scan order.
        if (better) {
          found = true;
          pi = i;
          pj = j;
          best_zd = zd;
          best_val = val;
        }
      }
    }
    if (!found) break;
    out.zero_divisor_pivot |= best_zd;
    if (pi != t) log_step({StepKind::SwapRows, t, pi, d.zero()});
    if (pj != t) log_step({StepKind::SwapCols, t, pj, d.zero()});

    for (int i = t + 1; i < m.rows; ++i) {
      if (d.is_zero(m.at(i, t))) continue;
      auto [c, e] = d.ore_pair(m.at(t, t), m.at(i, t));  // pivot*c = a_it*e
      if (!d.is_one(e)) log_step({StepKind::ScaleRow, i, 0, e});
      log_step({StepKind::AddScaledRow, t, i, d.neg(c)});
      if (!d.is_zero(m.at(i, t)))
        throw DomainError("triangularize: elimination failed to clear an entry");
    }
    ++t;
  }
  out.rank = t;
  return out;
}

// Independent rank oracle over the fraction field: the largest k with a
// nonzero k x k minor.  Valid for domains (no zero divisors).
template <typename Domain>
typename Domain::Elem minor_det(const Domain& d, const RingMatrix<Domain>& m,
                                const std::vector<int>& rows_sel, const std::vector<int>& cols_sel) {
  size_t n = rows_sel.size();
  if (n == 1) return m.at(rows_sel[0], cols_sel[0]);
  typename Domain::Elem acc = d.zero();
  std::vector<int> sub_rows(rows_sel.begin() + 1, rows_sel.end());
  for (size_t j = 0; j < n; ++j) {
    if (d.is_zero(m.at(rows_sel[0], cols_sel[j]))) continue;
    std::vector<int> sub_cols;
    for (size_t c = 0; c < n; ++c)
      if (c != j) sub_cols.push_back(cols_sel[c]);
    typename Domain::Elem term = d.mul(m.at(rows_sel[0], cols_sel[j]),
                                       minor_det(d, m, sub_rows, sub_cols));
    acc = (j % 2 == 0) ? d.add(acc, term) : d.sub(acc, term);
  }
  return acc;
}

template <typename Domain>
int minor_rank(const Domain& d, const RingMatrix<Domain>& m) {
  int maxk = std::min(m.rows, m.cols);
  for (int k = maxk; k >= 1; --k) {
    // All row/column k-subsets.
    std::vector<int> rsel(static_cast<size_t>(k)), csel(static_cast<size_t>(k));
    std::vector<int> ridx(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) ridx[static_cast<size_t>(i)] = i;
    while (true) {
      for (int i = 0; i < k; ++i) rsel[static_cast<size_t>(i)] = ridx[static_cast<size_t>(i)];
      std::vector<int> cidx(static_cast<size_t>(k));
      for (int i = 0; i < k; ++i) cidx[static_cast<size_t>(i)] = i;
      while (true) {
        for (int i = 0; i < k; ++i) csel[static_cast<size_t>(i)] = cidx[static_cast<size_t>(i)];
        if (!d.is_zero(minor_det(d, m, rsel, csel))) return k;
        int i = k - 1;
        while (i >= 0 && cidx[static_cast<size_t>(i)] == m.cols - k + i) --i;
        if (i < 0) break;
        ++cidx[static_cast<size_t>(i)];
        for (int j = i + 1; j < k; ++j) cidx[static_cast<size_t>(j)] = cidx[static_cast<size_t>(j - 1)] + 1;
      }
      int i = k - 1;
      while (i >= 0 && ridx[static_cast<size_t>(i)] == m.rows - k + i) --i;
      if (i < 0) break;
      ++ridx[static_cast<size_t>(i)];
      for (int j = i + 1; j < k; ++j) ridx[static_cast<size_t>(j)] = ridx[static_cast<size_t>(j - 1)] + 1;
    }
  }
  return 0;
}

// Matrix text format: rows separated by `;`, entries by `,`.
template <typename Domain>
std::string format_matrix(const Domain& d, const RingMatrix<Domain>& m) {
  std::string out;
  for (int i = 0; i < m.rows; ++i) {
    if (i) out += "; ";
    for (int j = 0; j < m.cols; ++j) {
      if (j) out += ", ";
      out += d.format(m.at(i, j));
    }
  }
  return out;
}

template <typename Domain>
RingMatrix<Domain> parse_matrix(const Domain& d, const std::string& text) {
  std::vector<std::vector<typename Domain::Elem>> rows;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find(';', pos);
    std::string row_text = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    std::vector<typename Domain::Elem> row;
    size_t p = 0;
    while (p <= row_text.size()) {
      size_t e = row_text.find(',', p);
      std::string cell = row_text.substr(p, e == std::string::npos ? std::string::npos : e - p);
      row.push_back(d.parse(cell));
      if (e == std::string::npos) break;
      p = e + 1;
    }
    rows.push_back(std::move(row));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  if (rows.empty()) throw DomainError("matrix parse: empty input");
  RingMatrix<Domain> m;
  m.rows = static_cast<int>(rows.size());
  m.cols = static_cast<int>(rows[0].size());
  for (const auto& r : rows)
    if (static_cast<int>(r.size()) != m.cols) throw DomainError("matrix parse: ragged rows");
  m.a = std::move(rows);
  return m;
}

// Log text format, one step per line, 1-based indices:
//   swap-cols I J | swap-rows I J | scale-row I ELEM | add-scaled-row I J ELEM
template <typename Domain>
std::string format_log(const Domain& d, const TransformLog<Domain>& log) {
  std::string out;
  for (const auto& s : log) {
    switch (s.kind) {
      case StepKind::SwapCols:
        out += "swap-cols " + std::to_string(s.i + 1) + " " + std::to_string(s.j + 1);
        break;
      case StepKind::SwapRows:
        out += "swap-rows " + std::to_string(s.i + 1) + " " + std::to_string(s.j + 1);
        break;
      case StepKind::ScaleRow:
        out += "scale-row " + std::to_string(s.i + 1) + " " + d.format(s.factor);
        break;
      case StepKind::AddScaledRow:
        out += "add-scaled-row " + std::to_string(s.i + 1) + " " + std::to_string(s.j + 1) +
               " " + d.format(s.factor);
        break;
    }
    out += '\n';
  }
  return out;
}

template <typename Domain>
TransformLog<Domain> parse_log(const Domain& d, const std::string& text) {
  TransformLog<Domain> log;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    std::string line = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? text.size() : end + 1;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream in(line);
    std::string kind;
    in >> kind;
    TransformStep<Domain> s;
    if (kind == "swap-cols" || kind == "swap-rows") {
      s.kind = kind == "swap-cols" ? StepKind::SwapCols : StepKind::SwapRows;
      int i, j;
      if (!(in >> i >> j)) throw DomainError("log parse: bad indices in '" + line + "'");
      s.i = i - 1;
      s.j = j - 1;
      s.factor = d.zero();
    } else if (kind == "scale-row") {
      int i;
      if (!(in >> i)) throw DomainError("log parse: bad index in '" + line + "'");
      std::string rest;
      std::getline(in, rest);
      s.kind = StepKind::ScaleRow;
      s.i = i - 1;
      s.factor = d.parse(rest);
    } else if (kind == "add-scaled-row") {
      int i, j;
      if (!(in >> i >> j)) throw DomainError("log parse: bad indices in '" + line + "'");
      std::string rest;
      std::getline(in, rest);
      s.kind = StepKind::AddScaledRow;
      s.i = i - 1;
      s.j = j - 1;
      s.factor = d.parse(rest);
    } else {
      throw DomainError("log parse: unknown step '" + kind + "'");
    }
    log.push_back(std::move(s));
  }
  return log;
}

}  // namespace foxfree

#endif
