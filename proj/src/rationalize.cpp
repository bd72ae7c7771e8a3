#include "gurarii/rationalize.hpp"

#include <stdexcept>

#include "gurarii/errors.hpp"

namespace gurarii {

QVec extend_functional(const QVec& phi, const LinMap& incl) {
  const Space& x = incl.domain();
  const Space& y = incl.codomain();
  if (phi.size() != x.dim()) throw DimensionError("extend_functional: functional dimension mismatch");
  if (!is_isometric(incl)) throw PreconditionError("extend_functional: inclusion is not isometric");
  const std::size_t m = y.dim();
  if (x.dim() == 0 || is_zero(phi)) return zero_vec(m);
  // Variables psi (m, free) and t; minimize t with |psi . v| <= t on Y's vertices.
  LpProblem p;
  p.sense = Sense::kMinimize;
  p.objective = unit_vec(m + 1, m);
  for (const auto& v : y.vertices()) {
    for (int s : {1, -1}) {
      QVec row = zero_vec(m + 1);
      for (std::size_t k = 0; k < m; ++k) row[k] = s * v[k];
      row[m] = -1;
      p.constraints.push_back({std::move(row), Relation::kLessEq, Rat(0)});
    }
  }
  const QMat& a = incl.matrix();
  for (std::size_t c = 0; c < x.dim(); ++c) {
    QVec row = zero_vec(m + 1);
    for (std::size_t k = 0; k < m; ++k) row[k] = a(k, c);
    p.constraints.push_back({std::move(row), Relation::kEqual, phi[c]});
  }
  const LpResult r = lp_solve(p);
  if (r.status != LpStatus::kOptimal) throw std::logic_error("extend_functional: LP not optimal");
  QVec psi(r.point.begin(), r.point.begin() + static_cast<std::ptrdiff_t>(m));
  if (r.value != dual_norm_eval(x, phi)) throw std::logic_error("extend_functional: dual norm not preserved");
  return psi;
}

bool delta_equivalent(const Space& a, const Space& b, const Rat& delta) {
  if (a.dim() != b.dim()) throw DimensionError("delta_equivalent: dimension mismatch");
  const Rat hi = 1 + delta;
  const Rat lo = 1 / hi;
  // With vertices of norm 1 on their own side, the ratio bounds reduce to these.
  for (const auto& v : a.vertices()) {
    const Rat n = norm_eval(b, v);
    if (n < lo || n > hi) return false;
  }
  for (const auto& v : b.vertices()) {
    const Rat n = norm_eval(a, v);
    if (n < lo || n > hi) return false;
  }
  return true;
}

NormRepair repair_norm(const Space& y, const LinMap& incl, const Rat& delta) {
  if (sgn(delta) <= 0) throw PreconditionError("repair_norm: delta > 0 required");
  if (!(incl.codomain() == y)) throw DimensionError("repair_norm: inclusion does not land in Y");
  std::vector<QVec> h;
  for (const auto& phi : incl.domain().facets()) h.push_back(extend_functional(phi, incl));
  const Rat s = 1 / (1 + delta);
  for (const auto& psi : y.facets()) h.push_back(s * psi);
  Space repaired(Ball{y.dim(), std::nullopt, std::move(h)});
  LinMap pinned(incl.matrix(), incl.domain(), repaired);
  if (!is_isometric(pinned)) throw std::logic_error("repair_norm: pinned subspace lost isometry");
  if (!delta_equivalent(y, repaired, delta)) throw std::logic_error("repair_norm: not delta-equivalent");
  return NormRepair{y, std::move(repaired), delta, std::move(pinned)};
}

Space scale_norm(const Space& x, const Rat& c) {
  if (sgn(c) <= 0) throw PreconditionError("scale_norm: positive factor required");
  std::vector<QVec> v, h;
  const Rat inv = 1 / c;
  for (const auto& p : x.vertices()) v.push_back(inv * p);
  for (const auto& f : x.facets()) h.push_back(c * f);
  return Space::from_complete(Ball{x.dim(), canonical_set(std::move(v)), canonical_set(std::move(h))});
}

OperatorRepair repair_operator(const LinMap& t, const LinMap& i0, const LinMap& j0, const Rat& delta) {
  if (sgn(delta) <= 0) throw PreconditionError("repair_operator: delta > 0 required");
  if (!(i0.codomain() == t.domain()) || !(j0.codomain() == t.codomain())) {
    throw DimensionError("repair_operator: pinned subspaces do not sit in the domain and codomain");
  }
  if (!is_isometric(i0)) throw PreconditionError("repair_operator: i0 is not isometric");
  if (!is_isometric(j0)) throw PreconditionError("repair_operator: j0 is not isometric");
  if (!solve_linear(j0.matrix(), t.matrix() * i0.matrix())) {
    throw PreconditionError("repair_operator: T does not map X0 into Y0 (T o i0 = j0 o T0)");
  }
  const Rat scale = (1 + delta) * (1 + delta);
  const Rat n = operator_norm(t);
  if (n > scale) {
    throw PreconditionError("repair_operator: ||T|| <= (1+delta)^2 violated (norm " + to_string(n) + ")");
  }
  const Space& x = t.domain();
  const Space& y = t.codomain();
  NormRepair ry{y, y, Rat(0), j0};
  if (n <= 1) {
    return OperatorRepair{NormRepair{x, x, Rat(0), i0}, std::move(ry), t, false};
  }
  if (i0.domain().dim() > 0) {
    throw PreconditionError("repair_operator: rescaling the domain by (1+delta)^2 cannot keep a nonzero X0 isometric");
  }
  Space xs = scale_norm(x, scale);
  LinMap pinned(i0.matrix(), i0.domain(), xs);
  LinMap t2(t.matrix(), xs, y);
  if (operator_norm(t2) > 1) throw std::logic_error("repair_operator: rescaled operator is not nonexpansive");
  return OperatorRepair{NormRepair{x, std::move(xs), scale - 1, std::move(pinned)}, std::move(ry), std::move(t2), true};
}

}  // namespace gurarii
