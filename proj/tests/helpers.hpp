#pragma once

// Shared test fixtures: short constructors and a seeded rational generator.

#include <random>
#include <string>
#include <vector>

#include "gurarii/banach.hpp"
#include "gurarii/exactlin.hpp"

namespace testing {

using namespace gurarii;

using gurarii::QMat;
using gurarii::QVec;
using gurarii::Rat;

inline Rat q(const char* s) { return gurarii::parse_rat(s); }

inline QVec vec(std::initializer_list<const char*> xs) {
  QVec v;
  for (const char* x : xs) v.push_back(q(x));
  return v;
}

inline QMat mat(std::size_t cols, std::initializer_list<std::initializer_list<const char*>> rows) {
  std::vector<QVec> r;
  for (auto row : rows) r.push_back(vec(row));
  return QMat::from_rows(cols, r);
}

/// Small rationals from a fixed engine.
class RatGen {
 public:
  explicit RatGen(std::uint64_t seed) : eng_(seed) {}

  Rat small(int num_range = 4, int den_max = 4) {
    std::uniform_int_distribution<int> n(-num_range, num_range);
    std::uniform_int_distribution<int> d(1, den_max);
    Rat r(n(eng_), d(eng_));
    r.canonicalize();
    return r;
  }
  Rat positive(int num_max = 4, int den_max = 4) {
    std::uniform_int_distribution<int> n(1, num_max);
    std::uniform_int_distribution<int> d(1, den_max);
    Rat r(n(eng_), d(eng_));
    r.canonicalize();
    return r;
  }
  QVec vector(std::size_t n, int num_range = 4, int den_max = 4) {
    QVec v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(small(num_range, den_max));
    return v;
  }
  QMat matrix(std::size_t r, std::size_t c, int num_range = 4, int den_max = 4) {
    QMat m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = small(num_range, den_max);
    return m;
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

  /// A random full-dimensional symmetric polytope given by vertices: the
  /// coordinate vectors (scaled) plus a few extra points.
  gurarii::Space space(std::size_t n, std::size_t extra = 2) {
    if (n == 0) return gurarii::Space();
    std::vector<QVec> v;
    for (std::size_t i = 0; i < n; ++i) {
      QVec e = gurarii::zero_vec(n);
      e[i] = positive(3, 2);
      v.push_back(e);
    }
    for (std::size_t k = 0; k < extra; ++k) v.push_back(vector(n, 2, 2));
    return gurarii::Space(gurarii::Ball{n, v, std::nullopt});
  }

  /// A nonexpansive map between the given spaces: random matrix scaled down
  /// by its operator norm when that exceeds 1.
  gurarii::LinMap contraction(const gurarii::Space& x, const gurarii::Space& y) {
    gurarii::LinMap t(matrix(y.dim(), x.dim(), 3, 3), x, y);
    const Rat n = gurarii::operator_norm(t);
    if (n > 1) t = gurarii::LinMap(Rat(1 / n) * t.matrix(), x, y);
    return t;
  }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

/// Rational points on the unit sphere of x: random directions scaled by norm.
inline std::vector<QVec> sphere_sample(const gurarii::Space& x, RatGen& g, std::size_t count) {
  std::vector<QVec> out;
  while (out.size() < count) {
    QVec v = g.vector(x.dim(), 6, 5);
    if (gurarii::is_zero(v)) continue;
    const Rat n = gurarii::norm_eval(x, v);
    out.push_back(Rat(1 / n) * v);
  }
  return out;
}

}  // namespace testing
