#include "gurarii/banach.hpp"

#include <string>

#include "gurarii/errors.hpp"

namespace gurarii {

Space::Space() : ball_(std::make_shared<const Ball>(Ball{0, std::vector<QVec>{}, std::vector<QVec>{}})) {}

Space::Space(const Ball& ball, std::size_t dim_cap)
    : ball_(std::make_shared<const Ball>(complete_representations(ball, dim_cap))) {}

Space Space::from_complete(Ball ball) {
  Space s;
  s.ball_ = std::make_shared<const Ball>(std::move(ball));
  return s;
}

bool operator==(const Space& a, const Space& b) {
  if (a.ball_ == b.ball_) return true;
  return a.dim() == b.dim() && a.vertices() == b.vertices();
}

Space l_inf(std::size_t n) {
  std::vector<QVec> h;
  for (std::size_t i = 0; i < n; ++i) h.push_back(unit_vec(n, i));
  return Space(Ball{n, std::nullopt, std::move(h)});
}

Space l_one(std::size_t n) {
  std::vector<QVec> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(unit_vec(n, i));
  return Space(Ball{n, std::move(v), std::nullopt});
}

Space scaled_line(const Rat& c) {
  if (sgn(c) <= 0) throw NotANorm("scaled_line: scale must be positive");
  return Space::from_complete(Ball{1, std::vector<QVec>{QVec{Rat(1 / c)}}, std::vector<QVec>{QVec{c}}});
}

Space real_line() { return scaled_line(Rat(1)); }

// ---------------------------------------------------------------------------

LinMap::LinMap(QMat matrix, Space domain, Space codomain)
    : matrix_(std::move(matrix)), domain_(std::move(domain)), codomain_(std::move(codomain)) {
  if (matrix_.cols() != domain_.dim() || matrix_.rows() != codomain_.dim()) {
    throw DimensionError("LinMap: matrix is " + std::to_string(matrix_.rows()) + "x" +
                         std::to_string(matrix_.cols()) + " but spaces have dims " +
                         std::to_string(domain_.dim()) + " -> " + std::to_string(codomain_.dim()));
  }
}

LinMap LinMap::identity(const Space& s) { return LinMap(QMat::identity(s.dim()), s, s); }

LinMap LinMap::zero(const Space& domain, const Space& codomain) {
  return LinMap(QMat(codomain.dim(), domain.dim()), domain, codomain);
}

bool operator==(const LinMap& a, const LinMap& b) {
  return a.matrix_ == b.matrix_ && a.domain_ == b.domain_ && a.codomain_ == b.codomain_;
}

LinMap compose(const LinMap& outer, const LinMap& inner) {
  if (!(inner.codomain() == outer.domain())) {
    throw DimensionError("compose: codomain of the inner map is not the domain of the outer map");
  }
  return LinMap(outer.matrix() * inner.matrix(), inner.domain(), outer.codomain());
}

LinMap difference(const LinMap& a, const LinMap& b) {
  if (!(a.domain() == b.domain()) || !(a.codomain() == b.codomain())) {
    throw DimensionError("map difference: maps act between different spaces");
  }
  return LinMap(a.matrix() - b.matrix(), a.domain(), a.codomain());
}

// ---------------------------------------------------------------------------

Rat norm_eval(const Space& x, const QVec& v) {
  if (v.size() != x.dim()) throw DimensionError("norm_eval: vector dimension mismatch");
  return gauge_from_hrep(x.facets(), v);
}

Rat dual_norm_eval(const Space& x, const QVec& phi) {
  if (phi.size() != x.dim()) throw DimensionError("dual_norm_eval: functional dimension mismatch");
  return gauge_from_hrep(x.vertices(), phi);
}

Rat operator_norm(const LinMap& t) {
  Rat best = 0;
  for (const auto& v : t.domain().vertices()) {
    Rat n = norm_eval(t.codomain(), t.apply(v));
    if (n > best) best = std::move(n);
  }
  return best;
}

LowerBound lower_isometry_bound(const LinMap& t) {
  const Space& dom = t.domain();
  const Space& cod = t.codomain();
  if (dom.dim() == 0) return LowerBound{Rat(1), {}};

  const auto& cverts = cod.vertices();
  const std::size_t nw = cverts.size();
  const std::size_t m = cod.dim();
  std::optional<LowerBound> best;
  for (const auto& phi : dom.facets()) {
    // Vertices on the facet {phi = 1}, signed.
    std::vector<QVec> face;
    for (const auto& v : dom.vertices()) {
      const Rat s = dot(phi, v);
      if (s == 1) face.push_back(v);
      else if (s == -1) face.push_back(-v);
    }
    const std::vector<QVec> images = [&] {
      std::vector<QVec> out;
      for (const auto& f : face) out.push_back(t.apply(f));
      return out;
    }();
    // Columns: lambda_f (face), then c+_w, c-_w. Rows: cod coordinates, then sum lambda = 1.
    const std::size_t nf = face.size();
    QMat a(m + 1, nf + 2 * nw);
    QVec b(m + 1, Rat(0));
    QVec c(nf + 2 * nw, Rat(0));
    for (std::size_t j = 0; j < nf; ++j) {
      for (std::size_t i = 0; i < m; ++i) a(i, j) = -images[j][i];
      a(m, j) = 1;
    }
    for (std::size_t w = 0; w < nw; ++w) {
      for (std::size_t i = 0; i < m; ++i) {
        a(i, nf + 2 * w) = cverts[w][i];
        a(i, nf + 2 * w + 1) = -cverts[w][i];
      }
      c[nf + 2 * w] = 1;
      c[nf + 2 * w + 1] = 1;
    }
    b[m] = 1;
    const LpResult r = solve_standard_form(a, b, c);
    if (r.status != LpStatus::kOptimal) {
      throw std::logic_error("lower_isometry_bound: facet LP not optimal");
    }
    if (!best || r.value < best->value) {
      QVec x = zero_vec(dom.dim());
      for (std::size_t j = 0; j < nf; ++j) {
        if (sgn(r.point[j]) != 0) x = x + r.point[j] * face[j];
      }
      best = LowerBound{r.value, std::move(x)};
    }
  }
  return *best;
}

const char* to_string(EmbeddingVerdict v) {
  switch (v) {
    case EmbeddingVerdict::kIsometric: return "isometric";
    case EmbeddingVerdict::kStrictEps: return "strict-eps";
    case EmbeddingVerdict::kEps: return "eps";
    case EmbeddingVerdict::kNotEps: return "not-eps";
  }
  return "?";
}

EmbeddingClass classify_embedding(const LinMap& t, const Rat& eps) {
  if (sgn(eps) <= 0) throw PreconditionError("classify_embedding: eps > 0 required");
  if (t.domain().dim() == 0) return EmbeddingClass{Rat(1), Rat(1), EmbeddingVerdict::kIsometric};
  EmbeddingClass out;
  out.upper = operator_norm(t);
  out.lower = lower_isometry_bound(t).value;
  const Rat threshold = 1 / (1 + eps);
  if (out.lower == 1 && out.upper == 1) out.verdict = EmbeddingVerdict::kIsometric;
  else if (out.upper <= 1 && out.lower > threshold) out.verdict = EmbeddingVerdict::kStrictEps;
  else if (out.upper <= 1 && out.lower >= threshold) out.verdict = EmbeddingVerdict::kEps;
  else out.verdict = EmbeddingVerdict::kNotEps;
  return out;
}

std::optional<Rat> embedding_defect(const LinMap& t) {
  if (t.domain().dim() == 0) return Rat(0);
  if (operator_norm(t) > 1) return std::nullopt;
  const Rat lower = lower_isometry_bound(t).value;
  if (sgn(lower) == 0) return std::nullopt;
  return Rat(1 / lower - 1);
}

bool is_isometric(const LinMap& t) {
  if (t.domain().dim() == 0) return true;
  if (operator_norm(t) != 1) return false;
  return lower_isometry_bound(t).value == 1;
}

Rat map_distance(const LinMap& s, const LinMap& t) { return operator_norm(difference(s, t)); }

// ---------------------------------------------------------------------------

SumResult l1_sum(const Space& x, const Space& y) {
  const std::size_t n = x.dim();
  const std::size_t m = y.dim();
  std::vector<QVec> v;
  for (const auto& a : x.vertices()) v.push_back(concat(a, zero_vec(m)));
  for (const auto& b : y.vertices()) v.push_back(concat(zero_vec(n), b));
  // Facets of a free sum are the joins of facets: (phi, +-psi).
  std::vector<QVec> h;
  if (n == 0) {
    for (const auto& psi : y.facets()) h.push_back(concat(QVec{}, psi));
  } else if (m == 0) {
    for (const auto& phi : x.facets()) h.push_back(concat(phi, QVec{}));
  } else {
    for (const auto& phi : x.facets()) {
      for (const auto& psi : y.facets()) {
        h.push_back(concat(phi, psi));
        h.push_back(concat(phi, -psi));
      }
    }
  }
  Space s = Space::from_complete(Ball{n + m, canonical_set(std::move(v)), canonical_set(std::move(h))});
  LinMap inl(QMat::embedding(n + m, n), x, s);
  QMat r(n + m, m);
  for (std::size_t i = 0; i < m; ++i) r(n + i, i) = 1;
  LinMap inr(std::move(r), y, s);
  return SumResult{s, std::move(inl), std::move(inr)};
}

QuotientCoords quotient_coordinates(std::size_t n, const std::vector<QVec>& kernel) {
  if (kernel.empty()) return QuotientCoords{QMat::identity(n), QMat::identity(n), {}};
  const QMat k = QMat::from_rows(n, kernel);
  const Echelon e = rref_from_right(k);
  if (e.pivots.size() < kernel.size()) {
    throw PreconditionError("quotient: kernel vectors are linearly dependent");
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < n; ++c) {
    if (!is_pivot[c]) keep.push_back(c);
  }
  QMat q(keep.size(), n);
  QMat section(n, keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    q(i, keep[i]) = 1;
    section(keep[i], i) = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) q(i, e.pivots[r]) = -e.reduced(r, keep[i]);
  }
  return QuotientCoords{std::move(q), std::move(section), e.pivots};
}

QuotientResult quotient(const Space& x, const std::vector<QVec>& kernel, std::size_t dim_cap) {
  if (kernel.empty()) {
    return QuotientResult{x, LinMap::identity(x), QMat::identity(x.dim()), {}};
  }
  QuotientCoords c = quotient_coordinates(x.dim(), kernel);
  Space w(image_ball(x.ball(), c.q, dim_cap));
  LinMap qmap(std::move(c.q), x, w);
  return QuotientResult{std::move(w), std::move(qmap), std::move(c.section), std::move(c.pivots)};
}

SubspaceResult subspace(const Space& x, const QMat& basis) {
  if (basis.rows() != x.dim()) throw DimensionError("subspace: basis vectors have the wrong dimension");
  const std::size_t r = basis.cols();
  if (rank(basis) < r) throw PreconditionError("subspace: basis columns are dependent");
  if (r == 0) return SubspaceResult{Space(), LinMap(basis, Space(), x)};
  std::vector<QVec> h;
  const QMat bt = basis.transpose();
  for (const auto& phi : x.facets()) h.push_back(bt * phi);
  Space s(Ball{r, std::nullopt, std::move(h)});
  return SubspaceResult{s, LinMap(basis, s, x)};
}

}  // namespace gurarii
