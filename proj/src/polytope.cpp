#include "gurarii/polytope.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "gurarii/errors.hpp"

namespace gurarii {

namespace {

bool lex_less(const QVec& a, const QVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const Rat& x, const Rat& y) { return x < y; });
}

// ---------------------------------------------------------------------------
// Double description on the homogenised cone {(t, x) : t >= |a.x|}.
//
// Rays and constraint rows are primitive integer vectors. Adjacency of two
// rays is decided combinatorially: the common zero set must have at least
// D - 2 constraints and no third ray may vanish on all of them.

using ZVec = std::vector<mpz_class>;

class ZeroSet {
 public:
  explicit ZeroSet(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void resize(std::size_t bits) { words_.resize((bits + 63) / 64, 0); }
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
    return n;
  }
  ZeroSet operator&(const ZeroSet& o) const {
    ZeroSet r;
    r.words_.resize(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i] & o.words_[i];
    return r;
  }
  bool subset_of(const ZeroSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (words_[i] & ~o.words_[i]) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  ZVec coords;
  ZeroSet zeros;
};

void make_primitive(ZVec& v) {
  mpz_class g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
}

ZVec integer_row(const QVec& a) {
  // (1, a) scaled to primitive integers.
  mpz_class l = 1;
  for (const auto& x : a) l = lcm(l, x.get_den());
  ZVec row(a.size() + 1);
  row[0] = l;
  for (std::size_t i = 0; i < a.size(); ++i) row[i + 1] = a[i].get_num() * (l / a[i].get_den());
  make_primitive(row);
  return row;
}

mpz_class zdot(const ZVec& a, const ZVec& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  }
  return s;
}

}  // namespace

QVec canonical_sign(QVec v) {
  for (const auto& x : v) {
    if (sgn(x) > 0) return v;
    if (sgn(x) < 0) {
      for (auto& y : v) y = -y;
      return v;
    }
  }
  return v;
}

std::vector<QVec> canonical_set(std::vector<QVec> vs) {
  std::vector<QVec> out;
  out.reserve(vs.size());
  for (auto& v : vs) {
    if (is_zero(v)) continue;
    out.push_back(canonical_sign(std::move(v)));
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<QVec> symmetric_vertices(std::size_t dim, const std::vector<QVec>& functionals) {
  if (dim == 0) return {};
  const std::vector<QVec> fs = canonical_set(functionals);
  const std::size_t d = dim + 1;

  // Constraint rows: (1, -a) and (1, a) for each functional, both scaled.
  std::vector<ZVec> rows;
  rows.reserve(2 * fs.size());
  for (const auto& a : fs) {
    if (a.size() != dim) throw DimensionError("symmetric_vertices: functional of wrong dimension");
    rows.push_back(integer_row(-a));
    rows.push_back(integer_row(a));
  }

  // Initial simplicial cone from d independent rows, chosen greedily.
  std::vector<std::size_t> chosen;
  {
    QMat basis(0, d);
    for (std::size_t r = 0; r < rows.size() && chosen.size() < d; ++r) {
      QMat trial(basis.rows() + 1, d);
      for (std::size_t i = 0; i < basis.rows(); ++i)
        for (std::size_t j = 0; j < d; ++j) trial(i, j) = basis(i, j);
      for (std::size_t j = 0; j < d; ++j) trial(basis.rows(), j) = Rat(rows[r][j]);
      if (rank(trial) == trial.rows()) {
        basis = std::move(trial);
        chosen.push_back(r);
      }
    }
    if (chosen.size() < d) {
      throw NotANorm("not a norm: the functionals do not separate points (unbounded ball)");
    }
  }

  const std::size_t nrows = rows.size();
  std::vector<Ray> rays;
  {
    QMat ab(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) ab(i, j) = Rat(rows[chosen[i]][j]);
    const QMat inv = *inverse(ab);
    for (std::size_t c = 0; c < d; ++c) {
      mpz_class l = 1;
      for (std::size_t r = 0; r < d; ++r) l = lcm(l, inv(r, c).get_den());
      ZVec ray(d);
      for (std::size_t r = 0; r < d; ++r) ray[r] = inv(r, c).get_num() * (l / inv(r, c).get_den());
      make_primitive(ray);
      ZeroSet z(nrows);
      for (std::size_t i = 0; i < d; ++i) {
        if (i != c) z.set(chosen[i]);
      }
      rays.push_back(Ray{std::move(ray), std::move(z)});
    }
  }

  std::vector<bool> done(nrows, false);
  for (std::size_t r : chosen) done[r] = true;

  for (std::size_t r = 0; r < nrows; ++r) {
    if (done[r]) continue;
    const ZVec& a = rows[r];
    std::vector<mpz_class> val(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      val[k] = zdot(a, rays[k].coords);
      const int s = sgn(val[k]);
      if (s > 0) pos.push_back(k);
      else if (s < 0) neg.push_back(k);
      else rays[k].zeros.set(r);
    }
    if (neg.empty()) continue;

    std::vector<Ray> next;
    next.reserve(rays.size());
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (sgn(val[k]) >= 0) next.push_back(rays[k]);
    }
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        ZeroSet common = rays[p].zeros & rays[q].zeros;
        if (common.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
          if (k == p || k == q) continue;
          if (common.subset_of(rays[k].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        ZVec ray(d);
        const mpz_class cp = val[p];
        const mpz_class cq = -val[q];
        for (std::size_t j = 0; j < d; ++j) ray[j] = cp * rays[q].coords[j] + cq * rays[p].coords[j];
        make_primitive(ray);
        common.set(r);
        next.push_back(Ray{std::move(ray), std::move(common)});
      }
    }
    rays = std::move(next);
  }

  std::vector<QVec> verts;
  verts.reserve(rays.size());
  for (const auto& ray : rays) {
    if (sgn(ray.coords[0]) <= 0) {
      throw NotANorm("not a norm: unbounded direction in ball");
    }
    QVec v(dim);
    for (std::size_t j = 0; j < dim; ++j) v[j] = Rat(ray.coords[j + 1], ray.coords[0]);
    for (auto& x : v) x.canonicalize();
    verts.push_back(std::move(v));
  }
  return canonical_set(std::move(verts));
}

namespace {

void check_dims(const std::vector<QVec>& vs, std::size_t dim, const char* what) {
  for (const auto& v : vs) {
    if (v.size() != dim) {
      throw DimensionError(std::string(what) + " entry has dimension " + std::to_string(v.size()) +
                           ", expected " + std::to_string(dim));
    }
  }
}

void check_spanning(const std::vector<QVec>& vs, std::size_t dim) {
  if (rank(QMat::from_rows(dim, vs)) < dim) {
    throw NotANorm("not a norm: vertex list does not span R^" + std::to_string(dim));
  }
}

}  // namespace

Ball complete_representations(const Ball& b, std::size_t dim_cap) {
  if (b.dim > dim_cap) {
    throw CapExceeded("ball dimension " + std::to_string(b.dim) + " exceeds the cap " +
                      std::to_string(dim_cap));
  }
  if (!b.vrep && !b.hrep) throw NotANorm("ball has neither representation");
  if (b.vrep) check_dims(*b.vrep, b.dim, "vrep");
  if (b.hrep) check_dims(*b.hrep, b.dim, "hrep");
  Ball out{b.dim, std::vector<QVec>{}, std::vector<QVec>{}};
  if (b.dim == 0) return out;

  if (b.vrep) {
    const auto v = canonical_set(*b.vrep);
    check_spanning(v, b.dim);
    out.hrep = symmetric_vertices(b.dim, v);
    out.vrep = symmetric_vertices(b.dim, *out.hrep);
    if (b.hrep) {
      if (symmetric_vertices(b.dim, *b.hrep) != *out.vrep) {
        throw NotANorm("vrep and hrep describe different balls");
      }
    }
  } else {
    out.vrep = symmetric_vertices(b.dim, *b.hrep);
    out.hrep = symmetric_vertices(b.dim, *out.vrep);
  }
  return out;
}

Ball image_ball(const Ball& b, const QMat& a, std::size_t dim_cap) {
  if (a.cols() != b.dim) throw DimensionError("image_ball: matrix columns != ball dimension");
  const Ball src = b.vrep ? b : complete_representations(b, std::max(dim_cap, b.dim));
  if (rank(a) < a.rows()) {
    throw NotANorm("not a norm: linear map is not surjective, image is not full-dimensional");
  }
  std::vector<QVec> img;
  img.reserve(src.vrep->size());
  for (const auto& v : *src.vrep) img.push_back(a * v);
  return complete_representations(Ball{a.rows(), std::move(img), std::nullopt}, dim_cap);
}

Ball symmetric_hull(std::span<const Ball> parts, std::size_t dim_cap) {
  if (parts.empty()) throw NotANorm("symmetric_hull of no parts");
  const std::size_t dim = parts.front().dim;
  std::vector<QVec> all;
  for (const auto& p : parts) {
    if (p.dim != dim) throw DimensionError("symmetric_hull: parts differ in dimension");
    const Ball src = p.vrep ? p : complete_representations(p, std::max(dim_cap, p.dim));
    all.insert(all.end(), src.vrep->begin(), src.vrep->end());
  }
  return complete_representations(Ball{dim, std::move(all), std::nullopt}, dim_cap);
}

Rat gauge_from_hrep(std::span<const QVec> hrep, const QVec& x) {
  Rat best = 0;
  for (const auto& phi : hrep) {
    Rat v = dot(phi, x);
    if (sgn(v) < 0) v = -v;
    if (v > best) best = std::move(v);
  }
  return best;
}

Rat gauge_from_vrep(std::span<const QVec> vrep, const QVec& x) {
  const std::size_t n = x.size();
  const std::size_t k = vrep.size();
  // Variables c+ and c- per representative; min sum subject to V(c+ - c-) = x.
  QMat a(n, 2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    if (vrep[j].size() != n) throw DimensionError("gauge_from_vrep: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      a(i, 2 * j) = vrep[j][i];
      a(i, 2 * j + 1) = -vrep[j][i];
    }
  }
  const QVec c(2 * k, Rat(1));
  const LpResult r = solve_standard_form(a, x, c);
  if (r.status != LpStatus::kOptimal) throw NotANorm("gauge_from_vrep: point outside the span");
  return r.value;
}

bool contains(const Ball& outer, const Ball& inner) {
  if (outer.dim != inner.dim) throw DimensionError("contains: dimension mismatch");
  if (!outer.hrep || !inner.vrep) throw std::logic_error("contains: needs outer.hrep and inner.vrep");
  return std::all_of(inner.vrep->begin(), inner.vrep->end(),
                     [&](const QVec& v) { return gauge_from_hrep(*outer.hrep, v) <= 1; });
}

}  // namespace gurarii
