#include <stdexcept>
#include <string>

#include "gurarii/amalgam.hpp"
#include "gurarii/errors.hpp"
#include "gurarii/fraisse.hpp"
#include "gurarii/rationalize.hpp"

namespace gurarii {

namespace {

bool bijective(const LinMap& m) {
  return m.domain().dim() == m.codomain().dim() && rank(m.matrix()) == m.domain().dim();
}

void check_seed(const Chain& c, const LinMap& t, const LinMap& x0, const LinMap& y0, const OperatorSquare& seed,
                std::size_t stage) {
  if (stage >= c.size()) throw PreconditionError("g_witness: seed stage is not built");
  const ChainStage& st = c.stages[stage];
  if (!(x0.codomain() == t.domain()) || !(y0.codomain() == t.codomain())) {
    throw DimensionError("g_witness: X0, Y0 do not sit in the domain and codomain of T");
  }
  if (!(seed.s.domain() == x0.domain()) || !(seed.s.codomain() == y0.domain())) {
    throw DimensionError("g_witness: seed does not start at T restricted to X0");
  }
  if (!(seed.t.matrix() == st.f.matrix()) || !(seed.t.domain() == st.u) || !(seed.t.codomain() == st.v)) {
    throw PreconditionError("g_witness: seed does not land in the given stage");
  }
  if (!(t.matrix() * x0.matrix() == y0.matrix() * seed.s.matrix())) {
    throw PreconditionError("g_witness: T does not extend the seed operator (T o x0 = y0 o S)");
  }
  const Rat n = operator_norm(t);
  if (n > 1) throw PreconditionError("g_witness: ||T|| <= 1 violated (norm " + to_string(n) + ")");
  if (!is_isometric(x0) || !is_isometric(y0)) throw PreconditionError("g_witness: X0 <= X, Y0 <= Y must be isometric");
}

}  // namespace

GWitness g_witness(const Chain& c, const LinMap& t, const LinMap& x0, const LinMap& y0, const OperatorSquare& seed,
                   std::size_t stage, const Rat& eps, std::size_t dim_cap) {
  if (sgn(eps) <= 0) throw PreconditionError("g_witness: eps > 0 required");
  check_seed(c, t, x0, y0, seed, stage);
  GWitness w{LinMap::zero(t.domain(), c.stages[stage].u), LinMap::zero(t.codomain(), c.stages[stage].v), stage, c,
             eps / 3, Rat(0), Rat(0), {}};
  w.steps.push_back("delta = eps/3 = " + to_string(w.delta));
  w.steps.push_back("step 1: seed already lands in stage " + std::to_string(stage) + ", no distortion needed");
  const ChainStage& st = c.stages[stage];
  const OperatorSquare measured = make_square(seed.s, seed.t, seed.i0, seed.i1);
  const bool exact = measured.is_embedding();

  if (exact && bijective(x0) && bijective(y0)) {
    const QMat xinv = *inverse(x0.matrix());
    const QMat yinv = *inverse(y0.matrix());
    w.i_prime = LinMap(seed.i0.matrix() * xinv, t.domain(), st.u);
    w.j_prime = LinMap(seed.i1.matrix() * yinv, t.codomain(), st.v);
    w.steps.push_back("X0 = X and Y0 = Y: T is already realized at stage " + std::to_string(stage));
  } else {
    // Step 2: X2 >= X0 containing U_n, T2 extending S and F_n.
    Space x2 = st.u, y2 = st.v;
    LinMap t2 = st.f;
    LinMap k = LinMap::identity(st.u), l = LinMap::identity(st.v);
    LinMap x0_2 = seed.i0, y0_2 = seed.i1;
    if (exact) {
      w.steps.push_back("step 2: seed is an embedding of operators; X2 = U_n, Y2 = V_n, T2 = F_n");
    } else {
      const Rat leg = [&] {
        Rat d = 0;
        for (const LinMap* m : {&seed.i0, &seed.i1}) {
          const auto e = embedding_defect(*m);
          if (!e) throw PreconditionError("g_witness: seed legs are not almost isometric");
          if (*e > d) d = *e;
        }
        return d;
      }();
      const Rat e_sq = sgn(leg) > 0 ? leg : measured.defect;
      const Rat d_sq = measured.defect;
      if (e_sq + d_sq >= eps) {
        throw PreconditionError("g_witness: seed too far from an embedding: " + to_string(e_sq) + " + " +
                                to_string(d_sq) + " >= eps");
      }
      SquareSumResult ss = square_sum(seed.s, st.f, seed.i0, seed.i1, e_sq, d_sq, dim_cap);
      x2 = ss.source.z0;
      y2 = ss.target.z0;
      t2 = ss.map;
      x0_2 = ss.source.ix;
      y0_2 = ss.target.ix;
      k = ss.source.jy;
      l = ss.target.jy;
      w.steps.push_back("step 2: square sum with eps " + to_string(e_sq) + " and delta " + to_string(d_sq));
    }
    // Step 3: amalgamate X with X2 over X0, and Y with Y2 over Y0.
    const PushoutResult px = pushout(x0, x0_2, dim_cap);
    const PushoutResult py = pushout(y0, y0_2, dim_cap);
    const LinMap t3 = induced_map(px, x0, x0_2, compose(py.g, t), compose(py.j, t2));
    const LinMap a = compose(px.j, k);
    const LinMap b = compose(py.j, l);
    w.steps.push_back("step 3: pushouts of dims " + std::to_string(px.w.dim()) + " and " + std::to_string(py.w.dim()));
    // Step 4: everything is rational already; the repair is a check.
    const OperatorRepair rep = repair_operator(t3, a, b, w.delta);
    if (rep.rescaled) throw std::logic_error("g_witness: T3 is not nonexpansive");
    w.steps.push_back("step 4: repair_operator needs no rescale; realizing T3 at the next stage");
    Task task{t3, a, b, stage, "demand"};
    Chain next = step_chain(c, task, dim_cap);
    const LogEntry& e = next.log.back();
    if (!e.realized) {
      if (e.note.rfind("skipped", 0) == 0) throw CapExceeded("g_witness: " + e.note);
      throw std::logic_error("g_witness: demand step not realized: " + e.note);
    }
    w.m = e.stage;
    const ChainStage& sm = next.stages[w.m];
    w.i_prime = LinMap(*e.i_prime * px.g.matrix(), t.domain(), sm.u);
    w.j_prime = LinMap(*e.j_prime * py.g.matrix(), t.codomain(), sm.v);
    w.chain = std::move(next);
  }
  const LinMap iu = inclusion_u(w.chain, stage, w.m);
  const LinMap iv = inclusion_v(w.chain, stage, w.m);
  w.x_distance = map_distance(compose(w.i_prime, x0), compose(iu, seed.i0));
  w.y_distance = map_distance(compose(w.j_prime, y0), compose(iv, seed.i1));
  return w;
}

Report verify_g_witness(const GWitness& w, const LinMap& t, const LinMap& x0, const LinMap& y0,
                        const OperatorSquare& seed, std::size_t stage, const Rat& eps) {
  Report r;
  const ChainStage& sm = w.chain.stages.at(w.m);
  r.holds("(G*) commutation", "F_m o i' = j' o T", sm.f.matrix() * w.i_prime.matrix() == w.j_prime.matrix() * t.matrix());
  r.holds("stage order", "m >= n", w.m >= stage);
  const LinMap iu = inclusion_u(w.chain, stage, w.m);
  const LinMap iv = inclusion_v(w.chain, stage, w.m);
  r.lt("domain closeness", "||i' restricted to X0 - i|| < eps",
       map_distance(compose(w.i_prime, x0), compose(iu, seed.i0)), eps);
  r.lt("codomain closeness", "||j' restricted to Y0 - j|| < eps",
       map_distance(compose(w.j_prime, y0), compose(iv, seed.i1)), eps);
  const EmbeddingClass ci = classify_embedding(w.i_prime, eps);
  const EmbeddingClass cj = classify_embedding(w.j_prime, eps);
  r.holds("i' embedding", std::string("i' is an eps-embedding (verdict ") + to_string(ci.verdict) + ")",
          ci.at_least_eps());
  r.holds("j' embedding", std::string("j' is an eps-embedding (verdict ") + to_string(cj.verdict) + ")",
          cj.at_least_eps());
  return r;
}

// ---------------------------------------------------------------------------

SpaceWitness space_witness(const Chain& c, Side side, const LinMap& x0, const LinMap& i, std::size_t stage,
                           const Rat& eps, std::size_t dim_cap) {
  if (stage >= c.size()) throw PreconditionError("space_witness: stage is not built");
  const ChainStage& st = c.stages[stage];
  if (!(i.domain() == x0.domain())) throw DimensionError("space_witness: i does not start at X0");
  if (!is_isometric(i)) throw PreconditionError("space_witness: i is not isometric");
  if (side == Side::kDomain) {
    if (!(i.codomain() == st.u)) throw DimensionError("space_witness: i does not land in U_stage");
    // T0 = F_n o i on X0, extended to X through the pushout with X0 <= X.
    const LinMap t0 = compose(st.f, i);
    const PushoutResult p = pushout(x0, t0, dim_cap);
    OperatorSquare seed{t0, st.f, i, LinMap::identity(st.v), Rat(0), Rat(0), stage, stage};
    GWitness w = g_witness(c, p.g, x0, p.j, seed, stage, eps, dim_cap);
    return SpaceWitness{w.i_prime, w.m, std::move(w.chain), w.x_distance};
  }
  if (!(i.codomain() == st.v)) throw DimensionError("space_witness: i does not land in V_stage");
  // Zero operators out of the zero space.
  const Space z;
  const LinMap t = LinMap::zero(z, x0.codomain());
  OperatorSquare seed{LinMap::zero(z, x0.domain()), st.f, LinMap::zero(z, st.u), i, Rat(0), Rat(0), stage, stage};
  GWitness w = g_witness(c, t, LinMap::identity(z), x0, seed, stage, eps, dim_cap);
  return SpaceWitness{w.j_prime, w.m, std::move(w.chain), w.y_distance};
}

SpaceWitness kernel_witness(const Chain& c, const LinMap& x0, const LinMap& i, std::size_t stage, const Rat& eps,
                            std::size_t dim_cap) {
  if (stage >= c.size()) throw PreconditionError("kernel_witness: stage is not built");
  const ChainStage& st = c.stages[stage];
  if (!(i.codomain() == st.u) || !(i.domain() == x0.domain())) throw DimensionError("kernel_witness: i: X0 -> U_stage");
  if (!(st.f.matrix() * i.matrix()).is_zero()) throw PreconditionError("kernel_witness: i does not land in ker F_n");
  if (!is_isometric(i)) throw PreconditionError("kernel_witness: i is not isometric");
  const Space z;
  const LinMap t = LinMap::zero(x0.codomain(), z);
  OperatorSquare seed{LinMap::zero(x0.domain(), z), st.f, i, LinMap::zero(z, st.v), Rat(0), Rat(0), stage, stage};
  GWitness w = g_witness(c, t, x0, LinMap::identity(z), seed, stage, eps, dim_cap);
  return SpaceWitness{w.i_prime, w.m, std::move(w.chain), w.x_distance};
}

SurjectivityWitness surjectivity_witness(const Chain& c, const QVec& v, std::size_t stage, std::size_t dim_cap) {
  if (stage >= c.size()) throw PreconditionError("surjectivity_witness: stage is not built");
  const ChainStage& st = c.stages[stage];
  if (v.size() != st.v.dim()) throw DimensionError("surjectivity_witness: v is not in V_stage");
  if (is_zero(v)) throw PreconditionError("surjectivity_witness: v != 0 required");
  if (auto u = solve_linear(st.f.matrix(), v)) return SurjectivityWitness{stage, std::move(*u), c};
  // T = identity on span v, X0 = 0, Y0 = Y = span v, eps = 1.
  const Space line = scaled_line(norm_eval(st.v, v));
  const Space z;
  const LinMap id = LinMap::identity(line);
  OperatorSquare seed{LinMap::zero(z, line), st.f, LinMap::zero(z, st.u),
                      LinMap(QMat::from_columns(v.size(), {v}), line, st.v), Rat(0), Rat(0), stage, stage};
  GWitness w = g_witness(c, id, LinMap::zero(z, line), id, seed, stage, Rat(1), dim_cap);
  QVec u = w.i_prime.matrix().col(0);
  return SurjectivityWitness{w.m, std::move(u), std::move(w.chain)};
}

// ---------------------------------------------------------------------------

Rat EpsSchedule::term(std::size_t n) const {
  if (n == 0) return eps0;
  if (!terms.empty()) {
    if (n - 1 < terms.size()) return terms[n - 1];
    throw PreconditionError("EpsSchedule: explicit schedule too short");
  }
  Rat r(1);
  mpz_class den = 1;
  den <<= static_cast<mp_bitcnt_t>(n + offset);
  r /= den;
  return r;
}

bool EpsSchedule::satisfies_s(const Rat& eps) const {
  Rat sum = 0;
  if (terms.empty()) {
    mpz_class den = 1;
    den <<= offset;
    sum = Rat(1) / Rat(den);
  } else {
    for (const auto& t : terms) sum += t;
  }
  return 3 * sum < eps - eps0;
}

EpsSchedule EpsSchedule::dyadic(const Rat& eps0, unsigned offset) { return EpsSchedule{eps0, offset, {}}; }

std::vector<Truncation> truncations(const LinMap& t, std::size_t depth) {
  const Space& x = t.domain();
  const Space& y = t.codomain();
  std::vector<Truncation> out;
  std::vector<QVec> xb, yb;
  auto add_y = [&](const QVec& v) {
    std::vector<QVec> trial = yb;
    trial.push_back(v);
    if (rank(QMat::from_columns(y.dim(), trial)) == trial.size()) yb = std::move(trial);
  };
  for (std::size_t n = 0; n <= depth; ++n) {
    if (n > 0) {
      const std::size_t i = n - 1;
      if (i < x.dim()) xb.push_back(unit_vec(x.dim(), i));
      if (i < y.dim()) add_y(unit_vec(y.dim(), i));
      if (i < x.dim()) add_y(t.apply(unit_vec(x.dim(), i)));
    }
    const QMat xm = QMat::from_columns(x.dim(), xb);
    const QMat ym = QMat::from_columns(y.dim(), yb);
    const SubspaceResult xs = subspace(x, xm);
    const SubspaceResult ys = subspace(y, ym);
    const auto coeffs = solve_linear(ym, t.matrix() * xm);
    if (!coeffs) throw std::logic_error("truncations: T(X_n) escapes Y_n");
    out.push_back(Truncation{LinMap(*coeffs, xs.space, ys.space), xm, ym});
  }
  return out;
}

EmbedTranscript embed_operator(const Chain& c, const LinMap& t, const EpsSchedule& schedule, std::size_t depth,
                               std::size_t dim_cap) {
  if (depth < 1) throw PreconditionError("embed_operator: depth >= 1 required");
  const Rat n = operator_norm(t);
  if (n > 1) throw PreconditionError("embed_operator: ||T|| <= 1 violated (norm " + to_string(n) + ")");
  EmbedTranscript tr{{}, truncations(t, depth), schedule, c};
  const Space z;
  const ChainStage& s0 = c.stages[0];
  OperatorSquare sq{tr.pieces[0].t, s0.f, LinMap::zero(z, s0.u), LinMap::zero(z, s0.v), Rat(0), Rat(0), 0, 0};
  tr.squares.push_back(sq);
  for (std::size_t k = 0; k < depth; ++k) {
    const Truncation& cur = tr.pieces[k];
    const Truncation& nxt = tr.pieces[k + 1];
    // X_k and Y_k are prefixes of X_(k+1) and Y_(k+1) in the truncation bases.
    const LinMap xin(QMat::embedding(nxt.t.domain().dim(), cur.t.domain().dim()), cur.t.domain(), nxt.t.domain());
    const LinMap yin(QMat::embedding(nxt.t.codomain().dim(), cur.t.codomain().dim()), cur.t.codomain(),
                     nxt.t.codomain());
    const OperatorSquare& prev = tr.squares.back();
    GWitness w = g_witness(tr.chain, nxt.t, xin, yin, prev, prev.to_stage, schedule.term(k + 1), dim_cap);
    tr.chain = std::move(w.chain);
    OperatorSquare ns = make_square(nxt.t, tr.chain.stages[w.m].f, w.i_prime, w.j_prime);
    ns.from_stage = 0;
    ns.to_stage = w.m;
    tr.squares.push_back(std::move(ns));
  }
  return tr;
}

Report verify_embedding(const EmbedTranscript& tr) {
  Report r;
  for (std::size_t n = 0; n < tr.squares.size(); ++n) {
    const OperatorSquare& s = tr.squares[n];
    const Rat en = tr.schedule.term(n);
    const std::string tag = "i_" + std::to_string(n) + ": ";
    const ChainStage& st = tr.chain.stages.at(s.to_stage);
    r.holds(tag + "target", "i_n lands in a chain stage", s.t.matrix() == st.f.matrix() && s.t.domain() == st.u);
    const EmbeddingClass cx = classify_embedding(s.i0, en);
    const EmbeddingClass cy = classify_embedding(s.i1, en);
    r.holds(tag + "(i) domain leg", std::string("eps_n-embedding (verdict ") + to_string(cx.verdict) + ")",
            cx.at_least_eps());
    r.holds(tag + "(i) codomain leg", std::string("eps_n-embedding (verdict ") + to_string(cy.verdict) + ")",
            cy.at_least_eps());
    r.le(tag + "(i) defect", "||F o i_n - i_n o T_n|| <= eps_n",
         map_distance(compose(s.t, s.i0), compose(s.i1, s.s)), en);
    if (n == 0) continue;
    const OperatorSquare& p = tr.squares[n - 1];
    const Rat bound = 3 * tr.schedule.term(n - 1);
    const LinMap xin(QMat::embedding(s.s.domain().dim(), p.s.domain().dim()), p.s.domain(), s.s.domain());
    const LinMap yin(QMat::embedding(s.s.codomain().dim(), p.s.codomain().dim()), p.s.codomain(), s.s.codomain());
    const LinMap iu = inclusion_u(tr.chain, p.to_stage, s.to_stage);
    const LinMap iv = inclusion_v(tr.chain, p.to_stage, s.to_stage);
    r.le(tag + "(ii) domain closeness", "||i_n restricted to X_(n-1) - i_(n-1)|| <= 3 eps_(n-1)",
         map_distance(compose(s.i0, xin), compose(iu, p.i0)), bound);
    r.le(tag + "(ii) codomain closeness", "||i_n restricted to Y_(n-1) - i_(n-1)|| <= 3 eps_(n-1)",
         map_distance(compose(s.i1, yin), compose(iv, p.i1)), bound);
  }
  return r;
}

}  // namespace gurarii
