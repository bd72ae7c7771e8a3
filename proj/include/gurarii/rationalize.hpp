#pragma once

// Norm repairs over rational data: norm-preserving extension of functionals,
// a delta-equivalent renorming that keeps a subspace isometric, and the
// (1+delta)^2 rescale that makes an almost nonexpansive operator nonexpansive.

#include "gurarii/banach.hpp"

namespace gurarii {

struct NormRepair {
  Space original;
  Space repaired;
  Rat delta;      // the two norms are delta-equivalent
  LinMap pinned;  // isometric into repaired
};

/// A functional psi on Y with psi o incl = phi and least dual norm. Requires
/// incl isometric.
QVec extend_functional(const QVec& phi, const LinMap& incl);

/// Facets = extensions of X's facets together with Y's facets scaled by
/// (1+delta)^-1. Requires delta > 0 and incl: X -> Y isometric.
NormRepair repair_norm(const Space& y, const LinMap& incl, const Rat& delta);

/// (1+delta)^-1 ||x||_a <= ||x||_b <= (1+delta) ||x||_a for all x, decided on
/// the vertices of both balls.
bool delta_equivalent(const Space& a, const Space& b, const Rat& delta);

struct OperatorRepair {
  NormRepair x;
  NormRepair y;
  LinMap t;  // the same matrix, now nonexpansive
  bool rescaled = false;
};

/// Every norm here is already rational, so the only repair left is the
/// domain rescale by (1+delta)^2, applied when ||T|| > 1. Requires
/// ||T|| <= (1+delta)^2, i0 and j0 isometric and T(i0 X0) inside j0 Y0.
/// A rescale cannot keep a nonzero X0 isometric and is rejected.
OperatorRepair repair_operator(const LinMap& t, const LinMap& i0, const LinMap& j0, const Rat& delta);

/// The space with every facet multiplied by c > 0 (norm scaled by c).
Space scale_norm(const Space& x, const Rat& c);

}  // namespace gurarii
