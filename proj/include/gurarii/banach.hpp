#pragma once

// Rational polyhedral Banach spaces in standard coordinates of Q^n and the
// linear maps between them.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "gurarii/exactlin.hpp"
#include "gurarii/polytope.hpp"

namespace gurarii {

/// A finite-dimensional space Q^dim normed by a complete, canonical Ball.
/// Copies share the immutable ball.
class Space {
 public:
  /// The zero space.
  Space();
  /// Completes the ball (both representations); throws NotANorm.
  explicit Space(const Ball& ball, std::size_t dim_cap = kDefaultDimCap);

  /// The ball must already be complete and canonical (not re-checked).
  static Space from_complete(Ball ball);

  std::size_t dim() const { return ball_->dim; }
  const Ball& ball() const { return *ball_; }
  const std::vector<QVec>& vertices() const { return *ball_->vrep; }
  const std::vector<QVec>& facets() const { return *ball_->hrep; }

  friend bool operator==(const Space& a, const Space& b);

 private:
  std::shared_ptr<const Ball> ball_;
};

Space l_inf(std::size_t n);
Space l_one(std::size_t n);
/// (R, c|.|): the ball is [-1/c, 1/c].
Space scaled_line(const Rat& c);
/// (R, |.|).
Space real_line();

/// A rational matrix together with its domain and codomain.
class LinMap {
 public:
  LinMap(QMat matrix, Space domain, Space codomain);

  static LinMap identity(const Space& s);
  static LinMap zero(const Space& domain, const Space& codomain);

  const QMat& matrix() const { return matrix_; }
  const Space& domain() const { return domain_; }
  const Space& codomain() const { return codomain_; }
  QVec apply(const QVec& x) const { return matrix_ * x; }

  /// Same matrix, same dims, equal spaces.
  friend bool operator==(const LinMap& a, const LinMap& b);

 private:
  QMat matrix_;
  Space domain_;
  Space codomain_;
};

/// outer o inner. The codomain of inner must equal the domain of outer.
LinMap compose(const LinMap& outer, const LinMap& inner);
/// Pointwise difference of maps with the same domain and codomain.
LinMap difference(const LinMap& a, const LinMap& b);

Rat norm_eval(const Space& x, const QVec& v);
Rat dual_norm_eval(const Space& x, const QVec& phi);
Rat operator_norm(const LinMap& t);

struct LowerBound {
  Rat value;
  QVec witness;  // a point of the domain unit sphere attaining the value
};

/// min ||T x|| over the domain unit sphere, one LP per facet pair. The zero
/// space has an empty sphere; by convention its value is 1.
LowerBound lower_isometry_bound(const LinMap& t);

enum class EmbeddingVerdict { kIsometric, kStrictEps, kEps, kNotEps };
const char* to_string(EmbeddingVerdict v);

struct EmbeddingClass {
  Rat lower;
  Rat upper;
  EmbeddingVerdict verdict = EmbeddingVerdict::kNotEps;

  /// isometric, strict-eps or eps.
  bool at_least_eps() const { return verdict != EmbeddingVerdict::kNotEps; }
};

/// Requires eps > 0. A map out of the zero space is isometric.
EmbeddingClass classify_embedding(const LinMap& t, const Rat& eps);

/// Smallest d >= 0 such that t is a d-embedding (1/lower - 1), or nullopt when
/// t is not nonexpansive or not injective.
std::optional<Rat> embedding_defect(const LinMap& t);

bool is_isometric(const LinMap& t);

/// ||S - T||.
Rat map_distance(const LinMap& s, const LinMap& t);

struct SumResult {
  Space space;
  LinMap inl;
  LinMap inr;
};

/// X (+)_1 Y.
SumResult l1_sum(const Space& x, const Space& y);

struct QuotientResult {
  Space space;
  LinMap q;
  /// Right inverse of q placing quotient coordinates at the complement and
  /// zeros at the pivot coordinates.
  QMat section;
  std::vector<std::size_t> pivots;
};

/// The coordinate part of a quotient: q (as a matrix), section and pivots.
struct QuotientCoords {
  QMat q;
  QMat section;
  std::vector<std::size_t> pivots;
};
QuotientCoords quotient_coordinates(std::size_t n, const std::vector<QVec>& kernel);

/// X / span(kernel). Pivots are chosen scanning coordinates from the last one
/// backwards; the quotient keeps the remaining coordinates in ascending order.
QuotientResult quotient(const Space& x, const std::vector<QVec>& kernel, std::size_t dim_cap = kDefaultDimCap);

struct SubspaceResult {
  Space space;
  LinMap incl;  // isometric, matrix = the given basis columns
};

/// The span of the (independent) columns of basis with the restricted norm.
SubspaceResult subspace(const Space& x, const QMat& basis);

}  // namespace gurarii
