#include "gurarii/amalgam.hpp"

#include <stdexcept>
#include <string>

#include "gurarii/errors.hpp"

namespace gurarii {

namespace {

void require_nonexpansive(const LinMap& t, const char* what) {
  const Rat n = operator_norm(t);
  if (n > 1) {
    throw PreconditionError(std::string(what) + ": ||map|| <= 1 violated (norm " + to_string(n) + ")");
  }
}

}  // namespace

PushoutResult pushout(const LinMap& i, const LinMap& f, std::size_t dim_cap) {
  if (!(i.domain() == f.domain())) throw DimensionError("pushout: maps have different domains");
  require_nonexpansive(i, "pushout i");
  require_nonexpansive(f, "pushout f");
  const Space& x = i.codomain();
  const Space& y = f.codomain();
  const std::size_t nx = x.dim(), n = nx + y.dim();

  std::vector<QVec> delta;
  if (i.domain().dim() > 0) {
    const QMat gens = vstack(i.matrix(), Rat(-1) * f.matrix()).transpose();
    delta = rref(gens).reduced.row_list();
  }
  if (n - delta.size() > dim_cap) throw CapExceeded("pushout: dimension cap exceeded");
  QuotientCoords qc = quotient_coordinates(n, delta);
  // The ball of W is the hull of the images of both balls.
  std::vector<QVec> pts;
  const QMat qx = qc.q.column_block(0, nx);
  const QMat qy = qc.q.column_block(nx, y.dim());
  for (const auto& v : x.vertices()) pts.push_back(qx * v);
  for (const auto& v : y.vertices()) pts.push_back(qy * v);
  Space w(Ball{qc.q.rows(), std::move(pts), std::nullopt}, dim_cap);
  LinMap g(qx, x, w);
  LinMap j(qy, y, w);
  if (!(compose(g, i).matrix() == compose(j, f).matrix())) {
    throw std::logic_error("pushout: square does not commute");
  }
  return PushoutResult{std::move(w), std::move(g), std::move(j), std::move(delta), std::move(qc.section)};
}

LinMap induced_map(const PushoutResult& p, const LinMap& i, const LinMap& f, const LinMap& gp, const LinMap& jp) {
  if (!(gp.codomain() == jp.codomain())) throw DimensionError("induced_map: cocone legs have different codomains");
  if (!(compose(gp, i).matrix() == compose(jp, f).matrix())) {
    throw PreconditionError("induced_map: cocone does not commute (g' o i = j' o f)");
  }
  return LinMap(hstack(gp.matrix(), jp.matrix()) * p.section, p.w, gp.codomain());
}

CorrectionResult correction_sum(const LinMap& f, const Rat& eps, Convention conv, std::size_t dim_cap) {
  if (sgn(eps) <= 0) throw PreconditionError("correction_sum: eps > 0 required");
  const Space& x = f.domain();
  const Space& y = f.codomain();
  const std::size_t n = x.dim(), m = y.dim();
  if (n + m > dim_cap) throw CapExceeded("correction_sum: dimension cap exceeded");
  const Rat upper = operator_norm(f);
  const Rat bound = conv == Convention::kNonexpansive ? Rat(1) : Rat(1 + eps);
  if (upper > bound) {
    throw PreconditionError("correction_sum: ||f|| <= " + to_string(bound) + " violated (norm " + to_string(upper) +
                            ")");
  }
  if (n > 0 && eps < 1) {
    const Rat lower = lower_isometry_bound(f).value;
    if (lower < 1 - eps) {
      throw PreconditionError("correction_sum: ||f x|| >= (1 - eps) ||x|| violated (lower bound " + to_string(lower) +
                              ")");
    }
  }

  std::vector<QVec> gens;
  for (const auto& v : x.vertices()) gens.push_back(concat(v, zero_vec(m)));
  for (const auto& v : y.vertices()) gens.push_back(concat(zero_vec(n), v));
  const Rat inv = 1 / eps;
  for (const auto& v : x.vertices()) gens.push_back(inv * concat(v, -f.apply(v)));
  Space z0(Ball{n + m, std::move(gens), std::nullopt}, dim_cap);

  LinMap ix(QMat::embedding(n + m, n), x, z0);
  QMat r(n + m, m);
  for (std::size_t k = 0; k < m; ++k) r(n + k, k) = 1;
  LinMap jy(std::move(r), y, z0);
  return CorrectionResult{std::move(z0), std::move(ix), std::move(jy), eps, f};
}

Rat correction_norm_inf(const CorrectionResult& c, const QVec& v) {
  const Space& x = c.f.domain();
  const Space& y = c.f.codomain();
  const std::size_t n = x.dim(), m = y.dim();
  if (v.size() != n + m) throw DimensionError("correction_norm_inf: vector dimension mismatch");
  if (n + m == 0) return Rat(0);
  // Variables: x (n), y (m), w (n), tx, ty, tw.
  const std::size_t nv = 2 * n + m + 3;
  const std::size_t tx = 2 * n + m, ty = tx + 1, tw = tx + 2;
  LpProblem p;
  p.sense = Sense::kMinimize;
  p.objective = zero_vec(nv);
  p.objective[tx] = 1;
  p.objective[ty] = 1;
  p.objective[tw] = c.eps;
  auto bound = [&](const QVec& phi, std::size_t offset, std::size_t t) {
    for (int s : {1, -1}) {
      QVec row = zero_vec(nv);
      for (std::size_t k = 0; k < phi.size(); ++k) row[offset + k] = s * phi[k];
      row[t] = -1;
      p.constraints.push_back({std::move(row), Relation::kLessEq, Rat(0)});
    }
  };
  for (const auto& phi : x.facets()) {
    bound(phi, 0, tx);
    bound(phi, n + m, tw);
  }
  for (const auto& psi : y.facets()) bound(psi, n, ty);
  for (std::size_t k = 0; k < n; ++k) {
    QVec row = zero_vec(nv);
    row[k] = 1;
    row[n + m + k] = 1;
    p.constraints.push_back({std::move(row), Relation::kEqual, v[k]});
  }
  const QMat& fm = c.f.matrix();
  for (std::size_t k = 0; k < m; ++k) {
    QVec row = zero_vec(nv);
    row[n + k] = 1;
    for (std::size_t l = 0; l < n; ++l) row[n + m + l] = -fm(k, l);
    p.constraints.push_back({std::move(row), Relation::kEqual, v[n + k]});
  }
  // Sum of gauges is at least zero; pin the epigraph variables to be nonnegative.
  p.nonneg.assign(nv, false);
  p.nonneg[tx] = p.nonneg[ty] = p.nonneg[tw] = true;
  const LpResult r = lp_solve(p);
  if (r.status != LpStatus::kOptimal) throw std::logic_error("correction_norm_inf: LP not optimal");
  return r.value;
}

LinMap mediating_map(const CorrectionResult& c, const LinMap& i, const LinMap& j) {
  if (!(i.domain() == c.f.domain()) || !(j.domain() == c.f.codomain())) {
    throw DimensionError("mediating_map: legs do not start at X and Y");
  }
  if (!(i.codomain() == j.codomain())) throw DimensionError("mediating_map: legs have different codomains");
  require_nonexpansive(i, "mediating_map i");
  require_nonexpansive(j, "mediating_map j");
  const Rat d = map_distance(i, compose(j, c.f));
  if (d > c.eps) {
    throw PreconditionError("mediating_map: ||i - j o f|| <= eps violated (distance " + to_string(d) + ")");
  }
  LinMap h(hstack(i.matrix(), j.matrix()), c.z0, i.codomain());
  const Rat hn = operator_norm(h);
  if (hn > 1) throw std::logic_error("mediating_map: ||h|| = " + to_string(hn) + " > 1");
  return h;
}

SquareSumResult square_sum(const LinMap& t0, const LinMap& t1, const LinMap& f0, const LinMap& f1, const Rat& eps,
                           const Rat& delta, std::size_t dim_cap) {
  if (sgn(eps) <= 0 || sgn(delta) < 0) throw PreconditionError("square_sum: eps > 0 and delta >= 0 required");
  if (!(f0.domain() == t0.domain()) || !(f0.codomain() == t1.domain()) || !(f1.domain() == t0.codomain()) ||
      !(f1.codomain() == t1.codomain())) {
    throw DimensionError("square_sum: maps do not form a square");
  }
  require_nonexpansive(t0, "square_sum T0");
  require_nonexpansive(t1, "square_sum T1");
  for (const LinMap* f : {&f0, &f1}) {
    if (!classify_embedding(*f, eps).at_least_eps()) {
      throw PreconditionError("square_sum: f0 and f1 must be eps-embeddings ((1+eps)^-1 ||x|| <= ||f x|| <= ||x||)");
    }
  }
  const Rat d = map_distance(compose(f1, t0), compose(t1, f0));
  if (d > delta) {
    throw PreconditionError("square_sum: ||f1 o T0 - T1 o f0|| <= delta violated (distance " + to_string(d) + ")");
  }
  CorrectionResult src = correction_sum(f0, eps + delta, Convention::kNonexpansive, dim_cap);
  CorrectionResult dst = correction_sum(f1, eps, Convention::kNonexpansive, dim_cap);
  LinMap map(block_diag(t0.matrix(), t1.matrix()), src.z0, dst.z0);
  const Rat n = operator_norm(map);
  if (n > 1) throw std::logic_error("square_sum: ||T0 (+) T1|| = " + to_string(n) + " > 1");
  return SquareSumResult{std::move(src), std::move(dst), std::move(map)};
}

}  // namespace gurarii
