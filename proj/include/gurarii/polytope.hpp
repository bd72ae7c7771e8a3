#pragma once

// Centrally symmetric rational polytopes, i.e. unit balls of polyhedral norms.
//
// A ball is stored with one representative per +/- pair. The vertex form
// lists v with ball = conv{+-v}; the facet form lists functionals phi with
// ball = {x : |phi(x)| <= 1}, so the gauge is max |phi(x)|. Conversion in
// either direction is the same vertex enumeration, applied to the ball or to
// its polar, done by the double description method.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "gurarii/exactlin.hpp"

namespace gurarii {

inline constexpr std::size_t kDefaultDimCap = 8;

struct Ball {
  std::size_t dim = 0;
  std::optional<std::vector<QVec>> vrep;
  std::optional<std::vector<QVec>> hrep;

  bool is_complete() const { return vrep.has_value() && hrep.has_value(); }
  friend bool operator==(const Ball&, const Ball&) = default;
};

/// Flip v so its first nonzero entry is positive.
QVec canonical_sign(QVec v);
/// Canonical signs, drop zeros and +/- duplicates, sort lexicographically.
std::vector<QVec> canonical_set(std::vector<QVec> vs);

/// Vertex representatives of {x in R^dim : |a.x| <= 1 for all a}. Throws
/// NotANorm when the functionals do not span the dual (unbounded set).
std::vector<QVec> symmetric_vertices(std::size_t dim, const std::vector<QVec>& functionals);

/// Both representations, irredundant and canonically ordered. Idempotent.
/// When both are given they must describe the same set.
Ball complete_representations(const Ball& b, std::size_t dim_cap = kDefaultDimCap);

/// Linear image of the ball under a surjective matrix.
Ball image_ball(const Ball& b, const QMat& a, std::size_t dim_cap = kDefaultDimCap);

/// conv of the union of the parts (all of the same dimension).
Ball symmetric_hull(std::span<const Ball> parts, std::size_t dim_cap = kDefaultDimCap);

/// max_j |phi_j(x)|.
Rat gauge_from_hrep(std::span<const QVec> hrep, const QVec& x);

/// min sum |c_v| subject to sum c_v v = x, by exact LP. Independent of hrep.
Rat gauge_from_vrep(std::span<const QVec> vrep, const QVec& x);

/// Every vertex of inner lies in outer (needs outer.hrep, inner.vrep).
bool contains(const Ball& outer, const Ball& inner);

}  // namespace gurarii
