#include "gurarii/exactlin.hpp"

#include <algorithm>
#include <cctype>

#include "gurarii/errors.hpp"

namespace gurarii {

std::string to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

bool is_decimal_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t start = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) start = 1;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  if (!is_decimal_integer(num, true)) {
    throw ParseError("malformed rational \"" + std::string(text) + "\"");
  }
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d = 1;
  if (slash != std::string_view::npos) {
    const std::string_view den = text.substr(slash + 1);
    if (!is_decimal_integer(den, false)) {
      throw ParseError("malformed rational \"" + std::string(text) + "\"");
    }
    d = mpz_class(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  }
  Rat r(n, d);
  r.canonicalize();
  return r;
}

QVec zero_vec(std::size_t n) { return QVec(n, Rat(0)); }

QVec unit_vec(std::size_t n, std::size_t k) {
  QVec v(n, Rat(0));
  v.at(k) = 1;
  return v;
}

bool is_zero(const QVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& r) { return sgn(r) == 0; });
}

Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw DimensionError("dot: length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

QVec operator+(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw DimensionError("vector sum: length mismatch");
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

QVec operator-(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw DimensionError("vector difference: length mismatch");
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

QVec operator-(const QVec& a) {
  QVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

QVec operator*(const Rat& s, const QVec& v) {
  QVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
  return r;
}

QVec concat(const QVec& a, const QVec& b) {
  QVec r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

std::string to_string(const QVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

QMat::QMat(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rat(0)) {}

QMat QMat::identity(std::size_t n) { return embedding(n, n); }

QMat QMat::embedding(std::size_t rows, std::size_t cols) {
  QMat m(rows, cols);
  for (std::size_t i = 0; i < std::min(rows, cols); ++i) m(i, i) = 1;
  return m;
}

QMat QMat::from_rows(std::size_t cols, const std::vector<QVec>& rows) {
  QMat m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw DimensionError("from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

QMat QMat::from_columns(std::size_t rows, const std::vector<QVec>& cols) {
  QMat m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw DimensionError("from_columns: ragged columns");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

QVec QMat::row(std::size_t r) const {
  return QVec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
              data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

QVec QMat::col(std::size_t c) const {
  QVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<QVec> QMat::row_list() const {
  std::vector<QVec> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

std::vector<QVec> QMat::column_list() const {
  std::vector<QVec> out;
  out.reserve(cols_);
  for (std::size_t c = 0; c < cols_; ++c) out.push_back(col(c));
  return out;
}

QMat QMat::transpose() const {
  QMat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool QMat::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rat& r) { return sgn(r) == 0; });
}

QMat QMat::column_block(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw DimensionError("column_block out of range");
  QMat m(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count; ++c) m(r, c) = (*this)(r, first + c);
  return m;
}

QMat QMat::row_block(std::size_t first, std::size_t count) const {
  if (first + count > rows_) throw DimensionError("row_block out of range");
  QMat m(count, cols_);
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(r, c) = (*this)(first + r, c);
  return m;
}

QMat operator*(const QMat& a, const QMat& b) {
  if (a.cols() != b.rows()) throw DimensionError("matrix product: inner dimensions differ");
  QMat m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rat& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        if (sgn(b(k, j)) != 0) m(i, j) += aik * b(k, j);
      }
    }
  }
  return m;
}

QVec operator*(const QMat& a, const QVec& x) {
  if (a.cols() != x.size()) throw DimensionError("matrix-vector product: length mismatch");
  QVec y(a.rows(), Rat(0));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) != 0 && sgn(x[k]) != 0) y[i] += a(i, k) * x[k];
    }
  }
  return y;
}

QMat operator+(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sum: shape mismatch");
  QMat m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) + b(i, j);
  return m;
}

QMat operator-(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix difference: shape mismatch");
  QMat m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j) - b(i, j);
  return m;
}

QMat operator*(const Rat& s, const QMat& a) {
  QMat m(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = s * a(i, j);
  return m;
}

QMat hstack(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows()) throw DimensionError("hstack: row counts differ");
  QMat m(a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

QMat vstack(const QMat& a, const QMat& b) {
  if (a.cols() != b.cols()) throw DimensionError("vstack: column counts differ");
  QMat m(a.rows() + b.rows(), a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i) m(a.rows() + i, j) = b(i, j);
  }
  return m;
}

QMat block_diag(const QMat& a, const QMat& b) {
  QMat m(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

// ---------------------------------------------------------------------------

namespace {

// In-place Gauss-Jordan elimination visiting columns in the given order.
Echelon eliminate(QMat m, const std::vector<std::size_t>& column_order) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c : column_order) {
    if (row == m.rows()) break;
    std::size_t p = row;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    }
    const Rat inv = 1 / m(row, c);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (sgn(m(row, j)) != 0) m(row, j) *= inv;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || sgn(m(i, c)) == 0) continue;
      const Rat f = m(i, c);
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (sgn(m(row, j)) != 0) m(i, j) -= f * m(row, j);
      }
    }
    pivots.push_back(c);
    ++row;
  }
  return Echelon{m.row_block(0, row), std::move(pivots)};
}

}  // namespace

Echelon rref(const QMat& a) {
  std::vector<std::size_t> order(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) order[c] = c;
  return eliminate(a, order);
}

Echelon rref_from_right(const QMat& a) {
  std::vector<std::size_t> order(a.cols());
  for (std::size_t c = 0; c < a.cols(); ++c) order[c] = a.cols() - 1 - c;
  return eliminate(a, order);
}

std::size_t rank(const QMat& a) { return rref(a).pivots.size(); }

std::optional<QVec> solve_linear(const QMat& a, const QVec& b) {
  if (a.rows() != b.size()) throw DimensionError("solve_linear: A.rows != b.dim");
  QMat aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  const Echelon e = rref(aug);
  QVec x(a.cols(), Rat(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == a.cols()) return std::nullopt;
    x[e.pivots[r]] = e.reduced(r, a.cols());
  }
  return x;
}

std::optional<QMat> solve_linear(const QMat& a, const QMat& b) {
  if (a.rows() != b.rows()) throw DimensionError("solve_linear: A.rows != B.rows");
  QMat x(a.cols(), b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    auto col = solve_linear(a, b.col(c));
    if (!col) return std::nullopt;
    for (std::size_t r = 0; r < a.cols(); ++r) x(r, c) = (*col)[r];
  }
  return x;
}

std::vector<QVec> kernel_basis(const QMat& a) {
  const Echelon e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<QVec> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVec x(a.cols(), Rat(0));
    x[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<QMat> inverse(const QMat& a) {
  if (a.rows() != a.cols()) throw DimensionError("inverse: matrix not square");
  const std::size_t n = a.rows();
  const Echelon e = rref(hstack(a, QMat::identity(n)));
  if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] >= n)) return std::nullopt;
  return e.reduced.column_block(n, n);
}

// ---------------------------------------------------------------------------
// Simplex

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), width_(cols + 1), cells_(rows * width_, Rat(0)),
        cost_(width_, Rat(0)), basis_(rows, 0) {}

  Rat& at(std::size_t r, std::size_t c) { return cells_[r * width_ + c]; }
  Rat& rhs(std::size_t r) { return cells_[r * width_ + cols_]; }
  Rat& cost(std::size_t c) { return cost_[c]; }
  Rat& cost_rhs() { return cost_[cols_]; }
  std::size_t& basis(std::size_t r) { return basis_[r]; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const Rat inv = 1 / at(pr, pc);
    Rat* prow = &cells_[pr * width_];
    for (std::size_t j = 0; j < width_; ++j) {
      if (sgn(prow[j]) != 0) prow[j] *= inv;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == pr) continue;
      Rat* row = &cells_[i * width_];
      if (sgn(row[pc]) == 0) continue;
      const Rat f = row[pc];
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(prow[j]) != 0) row[j] -= f * prow[j];
      }
    }
    if (sgn(cost_[pc]) != 0) {
      const Rat f = cost_[pc];
      for (std::size_t j = 0; j < width_; ++j) {
        if (sgn(prow[j]) != 0) cost_[j] -= f * prow[j];
      }
    }
    basis_[pr] = pc;
  }

  void drop_row(std::size_t r) {
    cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(r * width_),
                 cells_.begin() + static_cast<std::ptrdiff_t>((r + 1) * width_));
    basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(r));
    --rows_;
  }

  // Bland's rule over columns [0, allowed). Returns false on unboundedness.
  bool optimize(std::size_t allowed) {
    for (;;) {
      std::size_t enter = allowed;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (sgn(cost_[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (enter == allowed) return true;
      std::size_t leave = rows_;
      Rat best;
      for (std::size_t i = 0; i < rows_; ++i) {
        const Rat& a = at(i, enter);
        if (sgn(a) <= 0) continue;
        Rat ratio = rhs(i) / a;
        if (leave == rows_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == rows_) return false;
      pivot(leave, enter);
    }
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t width_;
  std::vector<Rat> cells_;
  std::vector<Rat> cost_;  // reduced costs; last entry is minus the objective
  std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_standard_form(const QMat& a, const QVec& b, const QVec& c) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (b.size() != m || c.size() != n) throw DimensionError("solve_standard_form: shape mismatch");

  Tableau t(m, n + m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sgn(b[i]) < 0;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = flip ? Rat(-a(i, j)) : a(i, j);
    t.at(i, n + i) = 1;
    t.rhs(i) = flip ? Rat(-b[i]) : b[i];
    t.basis(i) = n + i;
  }
  // Phase 1: minimise the sum of artificials.
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.cost(j) -= t.at(i, j);
    t.cost_rhs() -= t.rhs(i);
  }
  t.optimize(n + m);
  if (sgn(t.cost_rhs()) != 0) return LpResult{LpStatus::kInfeasible, Rat(0), {}};

  // Drive artificials out of the basis; rows where that is impossible are redundant.
  for (std::size_t i = 0; i < t.rows();) {
    if (t.basis(i) < n) {
      ++i;
      continue;
    }
    std::size_t j = 0;
    while (j < n && sgn(t.at(i, j)) == 0) ++j;
    if (j < n) {
      t.pivot(i, j);
      ++i;
    } else {
      t.drop_row(i);
    }
  }

  // Phase 2.
  for (std::size_t j = 0; j <= n + m; ++j) t.cost(j) = 0;
  for (std::size_t j = 0; j < n; ++j) t.cost(j) = c[j];
  for (std::size_t i = 0; i < t.rows(); ++i) {
    const Rat cb = c[t.basis(i)];
    if (sgn(cb) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) t.cost(j) -= cb * t.at(i, j);
    t.cost_rhs() -= cb * t.rhs(i);
  }
  if (!t.optimize(n)) return LpResult{LpStatus::kUnbounded, Rat(0), {}};

  QVec x(n, Rat(0));
  for (std::size_t i = 0; i < t.rows(); ++i) x[t.basis(i)] = t.rhs(i);
  return LpResult{LpStatus::kOptimal, Rat(-t.cost_rhs()), std::move(x)};
}

LpResult lp_solve(const LpProblem& p) {
  const std::size_t nv = p.objective.size();
  if (!p.nonneg.empty() && p.nonneg.size() != nv) throw DimensionError("lp_solve: nonneg flags size");
  for (const auto& con : p.constraints) {
    if (con.coeffs.size() != nv) throw DimensionError("lp_solve: constraint dimension mismatch");
  }
  // Column layout: one or two columns per variable, then slacks.
  std::vector<std::size_t> pos_col(nv), neg_col(nv, SIZE_MAX);
  std::size_t ncols = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    pos_col[j] = ncols++;
    if (p.nonneg.empty() || !p.nonneg[j]) neg_col[j] = ncols++;
  }
  std::size_t nslack = 0;
  for (const auto& con : p.constraints) {
    if (con.rel != Relation::kEqual) ++nslack;
  }
  const std::size_t m = p.constraints.size();
  QMat a(m, ncols + nslack);
  QVec b(m);
  QVec c(ncols + nslack, Rat(0));
  const Rat dir = p.sense == Sense::kMaximize ? Rat(-1) : Rat(1);
  for (std::size_t j = 0; j < nv; ++j) {
    c[pos_col[j]] = dir * p.objective[j];
    if (neg_col[j] != SIZE_MAX) c[neg_col[j]] = -dir * p.objective[j];
  }
  std::size_t slack = ncols;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& con = p.constraints[i];
    for (std::size_t j = 0; j < nv; ++j) {
      a(i, pos_col[j]) = con.coeffs[j];
      if (neg_col[j] != SIZE_MAX) a(i, neg_col[j]) = -con.coeffs[j];
    }
    if (con.rel == Relation::kLessEq) a(i, slack++) = 1;
    if (con.rel == Relation::kGreaterEq) a(i, slack++) = -1;
    b[i] = con.rhs;
  }
  LpResult r = solve_standard_form(a, b, c);
  if (r.status != LpStatus::kOptimal) return r;
  QVec x(nv);
  for (std::size_t j = 0; j < nv; ++j) {
    x[j] = r.point[pos_col[j]];
    if (neg_col[j] != SIZE_MAX) x[j] -= r.point[neg_col[j]];
  }
  return LpResult{LpStatus::kOptimal, Rat(dir * r.value), std::move(x)};
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

}  // namespace gurarii
