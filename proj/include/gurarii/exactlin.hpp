#pragma once

// Exact rational linear algebra and linear programming.
//
// Everything here works over GMP rationals; there is no floating point. The
// simplex solver uses Bland's rule throughout, so results (including the
// optimal vertex returned for degenerate problems) are reproducible.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gurarii {

/// Exact rational scalar. GMP keeps it canonical (den > 0, gcd = 1).
using Rat = mpq_class;
using QVec = std::vector<Rat>;

/// "p/q", or "p" when q = 1.
std::string to_string(const Rat& r);
/// Accepts "p", "-p", "p/q" with q > 0 in decimal. Throws ParseError.
Rat parse_rat(std::string_view text);

QVec zero_vec(std::size_t n);
QVec unit_vec(std::size_t n, std::size_t k);
bool is_zero(const QVec& v);
Rat dot(const QVec& a, const QVec& b);
QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a, const QVec& b);
QVec operator-(const QVec& a);
QVec operator*(const Rat& s, const QVec& v);
QVec concat(const QVec& a, const QVec& b);
std::string to_string(const QVec& v);

/// Dense row-major rational matrix.
class QMat {
 public:
  QMat() = default;
  QMat(std::size_t rows, std::size_t cols);

  static QMat identity(std::size_t n);
  /// rows x cols matrix with the identity in the top-left corner.
  static QMat embedding(std::size_t rows, std::size_t cols);
  static QMat from_rows(std::size_t cols, const std::vector<QVec>& rows);
  static QMat from_columns(std::size_t rows, const std::vector<QVec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  QVec row(std::size_t r) const;
  QVec col(std::size_t c) const;
  std::vector<QVec> row_list() const;
  std::vector<QVec> column_list() const;

  QMat transpose() const;
  bool is_zero() const;
  /// Columns [first, first + count).
  QMat column_block(std::size_t first, std::size_t count) const;
  QMat row_block(std::size_t first, std::size_t count) const;

  friend bool operator==(const QMat& a, const QMat& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

QMat operator*(const QMat& a, const QMat& b);
QVec operator*(const QMat& a, const QVec& x);
QMat operator+(const QMat& a, const QMat& b);
QMat operator-(const QMat& a, const QMat& b);
QMat operator*(const Rat& s, const QMat& a);
/// [a b]
QMat hstack(const QMat& a, const QMat& b);
/// [a; b]
QMat vstack(const QMat& a, const QMat& b);
/// [[a, 0], [0, b]]
QMat block_diag(const QMat& a, const QMat& b);

/// Reduced row echelon form and the pivot column of each nonzero row.
struct Echelon {
  QMat reduced;  // only the nonzero rows are kept
  std::vector<std::size_t> pivots;
};

/// Pivots are chosen scanning columns left to right.
Echelon rref(const QMat& a);
/// Same, but pivots are chosen scanning columns right to left; each row has a
/// one at its pivot and zeros at the other pivots.
Echelon rref_from_right(const QMat& a);

std::size_t rank(const QMat& a);

/// Some x with a*x = b exactly, or nullopt when inconsistent.
std::optional<QVec> solve_linear(const QMat& a, const QVec& b);
/// Solves a*X = b column by column; nullopt if any column is inconsistent.
std::optional<QMat> solve_linear(const QMat& a, const QMat& b);

/// Basis of the null space, one vector per free column of the reduced echelon
/// form (free entry 1, pivot entries read off the reduced rows).
std::vector<QVec> kernel_basis(const QMat& a);

/// Inverse of a square matrix, nullopt when singular.
std::optional<QMat> inverse(const QMat& a);

// ---------------------------------------------------------------------------
// Linear programming

enum class Relation { kLessEq, kEqual, kGreaterEq };
enum class Sense { kMinimize, kMaximize };
enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpConstraint {
  QVec coeffs;
  Relation rel = Relation::kLessEq;
  Rat rhs;
};

struct LpProblem {
  QVec objective;
  std::vector<LpConstraint> constraints;
  Sense sense = Sense::kMaximize;
  /// Per-variable sign restriction; empty means every variable is free.
  std::vector<bool> nonneg;
};

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  Rat value;    // meaningful when optimal
  QVec point;   // meaningful when optimal
};

/// Two-phase tableau simplex with Bland's rule.
LpResult lp_solve(const LpProblem& p);

/// min c.x subject to a*x = b, x >= 0. Same solver, no conversion step.
LpResult solve_standard_form(const QMat& a, const QVec& b, const QVec& c);

const char* to_string(LpStatus s);

}  // namespace gurarii
