#pragma once

// Amalgamation of nonexpansive maps: the pushout, the correction sum that
// turns an almost isometry into two exact isometries, and the block operator
// between two correction sums over an almost commuting square.

#include <vector>

#include "gurarii/banach.hpp"

namespace gurarii {

struct PushoutResult {
  Space w;
  LinMap g;  // X -> W
  LinMap j;  // Y -> W
  std::vector<QVec> delta_basis;
  /// Right inverse of the quotient map, W -> X (+)_1 Y.
  QMat section;
};

/// Pushout of i: Z -> X and f: Z -> Y. W = (X (+)_1 Y) / {(i z, -f z)}.
PushoutResult pushout(const LinMap& i, const LinMap& f, std::size_t dim_cap = kDefaultDimCap);

/// The map W -> P out of the pushout for a cocone (gp: X -> P, jp: Y -> P)
/// with gp o i = jp o f. Throws PreconditionError when the cocone does not
/// commute.
LinMap induced_map(const PushoutResult& p, const LinMap& i, const LinMap& f, const LinMap& gp,
                   const LinMap& jp);

/// How the input map of a correction sum is bounded above.
enum class Convention {
  kNonexpansive,  // ||f|| <= 1
  kTwoSided,      // ||f|| <= 1 + eps
};

struct CorrectionResult {
  Space z0;   // carrier Q^(dim X + dim Y)
  LinMap ix;  // X -> Z0
  LinMap jy;  // Y -> Z0
  Rat eps;
  LinMap f;
};

/// X (+)_(f,eps) Y. The ball is the hull of ballX x 0, 0 x ballY and the
/// points (v, -f v) / eps for v in the vertex list of X. Requires eps > 0, the
/// upper bound on ||f|| for the convention, and ||f x|| >= (1 - eps) ||x||,
/// which is what makes both legs isometric.
CorrectionResult correction_sum(const LinMap& f, const Rat& eps, Convention conv = Convention::kNonexpansive,
                                std::size_t dim_cap = kDefaultDimCap);

/// inf ||x|| + ||y|| + eps ||w|| over v = (x + w, y - f w), as one LP.
Rat correction_norm_inf(const CorrectionResult& c, const QVec& v);

/// h(x, y) = i(x) + j(y) for an object (i, j) of the correction category.
/// Throws PreconditionError naming the violated bound.
LinMap mediating_map(const CorrectionResult& c, const LinMap& i, const LinMap& j);

struct SquareSumResult {
  CorrectionResult source;  // X0 (+)_(f0, eps + delta) Y0
  CorrectionResult target;  // X1 (+)_(f1, eps) Y1
  LinMap map;               // T0 (+) T1
};

/// Requires ||T0||, ||T1|| <= 1, f0 and f1 eps-embeddings and
/// ||f1 o T0 - T1 o f0|| <= delta.
SquareSumResult square_sum(const LinMap& t0, const LinMap& t1, const LinMap& f0, const LinMap& f1, const Rat& eps,
                           const Rat& delta, std::size_t dim_cap = kDefaultDimCap);

}  // namespace gurarii
