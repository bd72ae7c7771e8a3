#include <stdexcept>
#include <string>

#include "gurarii/amalgam.hpp"
#include "gurarii/errors.hpp"
#include "gurarii/fraisse.hpp"

namespace gurarii {

namespace {

struct BackMap {
  LinMap gx;
  LinMap gy;
  Chain chain;
};

OperatorSquare identity_square(const Chain& c, std::size_t stage) {
  const ChainStage& st = c.stages[stage];
  return OperatorSquare{st.f, st.f, LinMap::identity(st.u), LinMap::identity(st.v), Rat(0), Rat(0), stage, stage};
}

// f: S -> R an almost embedding of operators with S the stage e_stage of the
// chain. Finds g: R -> chain with g o f close to the inclusion of S.
BackMap back_map(const Chain& c, const OperatorSquare& f, std::size_t e_stage, const Rat& delta,
                  std::size_t dim_cap) {
  const OperatorSquare seed = identity_square(c, e_stage);
  if (f.is_embedding()) {
    GWitness w = g_witness(c, f.t, f.i0, f.i1, seed, e_stage, delta, dim_cap);
    return BackMap{std::move(w.i_prime), std::move(w.j_prime), std::move(w.chain)};
  }
  Rat leg = 0;
  for (const LinMap* m : {&f.i0, &f.i1}) {
    const auto d = embedding_defect(*m);
    if (!d) throw PreconditionError("back_and_forth: seed legs are not almost isometric");
    if (*d > leg) leg = *d;
  }
  const Rat e_sq = sgn(leg) > 0 ? leg : f.defect;
  const SquareSumResult ss = square_sum(f.s, f.t, f.i0, f.i1, e_sq, f.defect, dim_cap);
  GWitness w = g_witness(c, ss.map, ss.source.ix, ss.target.ix, seed, e_stage, delta, dim_cap);
  return BackMap{compose(w.i_prime, ss.source.jy), compose(w.j_prime, ss.target.jy), std::move(w.chain)};
}

// Appends stages from the chain's own task stream until the top contains
// e_n on both sides, or the step budget runs out.
Chain grow_until(Chain c, std::size_t n) {
  constexpr std::size_t kBudget = 64;
  for (std::size_t i = 0; i < kBudget; ++i) {
    if (c.top().u.dim() > n && c.top().v.dim() > n) break;
    Task t = task_at(c, c.log.size());
    c = step_chain(std::move(c), t);
  }
  return c;
}

// Smallest stage at or after from containing e_n on both sides, else the top.
std::size_t smallest_stage(const Chain& c, std::size_t from, std::size_t n) {
  for (std::size_t s = from; s < c.size(); ++s) {
    if (c.stages[s].u.dim() > n && c.stages[s].v.dim() > n) return s;
  }
  return c.size() - 1;
}

OperatorSquare lift_to(const Chain& from, std::size_t from_stage, const Chain& to, std::size_t stage,
                       const BackMap& g) {
  const ChainStage& t = to.stages[stage];
  LinMap gx(QMat::embedding(t.u.dim(), g.gx.codomain().dim()) * g.gx.matrix(), g.gx.domain(), t.u);
  LinMap gy(QMat::embedding(t.v.dim(), g.gy.codomain().dim()) * g.gy.matrix(), g.gy.domain(), t.v);
  OperatorSquare s = make_square(from.stages[from_stage].f, t.f, std::move(gx), std::move(gy));
  s.from_stage = from_stage;
  s.to_stage = stage;
  return s;
}

bool same_stage(const LinMap& op, const ChainStage& st) {
  return op.matrix() == st.f.matrix() && op.domain() == st.u && op.codomain() == st.v;
}

}  // namespace

BnfTranscript back_and_forth(const Chain& a, const Chain& b, const OperatorSquare& seed, const Rat& eps,
                             std::size_t depth, std::size_t dim_cap) {
  if (sgn(eps) <= 0) throw PreconditionError("back_and_forth: eps > 0 required");
  if (seed.from_stage >= a.size() || seed.to_stage >= b.size()) {
    throw PreconditionError("back_and_forth: seed stages are not built");
  }
  if (!same_stage(seed.s, a.stages[seed.from_stage]) || !same_stage(seed.t, b.stages[seed.to_stage])) {
    throw PreconditionError("back_and_forth: seed does not act between the given stages");
  }
  OperatorSquare k = make_square(seed.s, seed.t, seed.i0, seed.i1);
  k.from_stage = seed.from_stage;
  k.to_stage = seed.to_stage;
  const Rat q0 = k.eps;
  if (q0 >= eps) {
    throw PreconditionError("back_and_forth: schedule infeasible, seed is only a " + to_string(q0) +
                            "-embedding and (s) needs eps_0 < eps = " + to_string(eps));
  }
  const Rat eps0 = sgn(q0) > 0 ? q0 : eps / 2;
  // Least c with 3 * 2^-c < eps - eps0 and 2^-(c+1) < eps0.
  unsigned c = 0;
  for (;; ++c) {
    if (c > 4096) throw PreconditionError("back_and_forth: no dyadic schedule fits");
    const EpsSchedule s = EpsSchedule::dyadic(eps0, c);
    if (s.satisfies_s(eps) && s.term(1) < eps0) break;
  }
  BnfTranscript tr{{}, {}, {}, EpsSchedule::dyadic(eps0, c), eps, a, b};
  tr.k_squares.push_back(k);
  for (std::size_t n = 0; n < depth; ++n) {
    const OperatorSquare& kn = tr.k_squares.back();
    // l_n: T'_n -> A, then T_(n+1) is the top stage of A.
    BackMap g = back_map(tr.a, kn, kn.from_stage, tr.schedule.term(n + 1), dim_cap);
    const std::size_t ma = g.chain.size() - 1;
    tr.a = grow_until(std::move(g.chain), n);
    tr.l_squares.push_back(lift_to(tr.b, kn.to_stage, tr.a, smallest_stage(tr.a, ma, n), g));
    const OperatorSquare& ln = tr.l_squares.back();
    // k_(n+1): T_(n+1) -> B, then T'_(n+1) is the top stage of B.
    BackMap h = back_map(tr.b, ln, ln.from_stage, tr.schedule.term(n + 2), dim_cap);
    const std::size_t mb = h.chain.size() - 1;
    tr.b = grow_until(std::move(h.chain), n);
    tr.k_squares.push_back(lift_to(tr.a, ln.to_stage, tr.b, smallest_stage(tr.b, mb, n), h));
  }
  for (std::size_t n = 1; n <= depth; ++n) {
    tr.etas.push_back(2 * tr.schedule.term(n - 1) + 3 * tr.schedule.term(n) + tr.schedule.term(n + 1));
  }
  return tr;
}

Report verify_bnf(const BnfTranscript& tr) {
  Report r;
  const EpsSchedule& s = tr.schedule;
  r.holds("(s)", "3 sum_(n>=1) eps_n < eps - eps_0", s.satisfies_s(tr.eps));
  r.lt("eps_0", "eps_0 < eps", s.term(0), tr.eps);
  const std::size_t depth = tr.l_squares.size();
  auto close = [&](const std::string& name, const std::string& bound, const LinMap& lhs, const LinMap& rhs,
                   const Rat& limit) { r.le(name, bound, map_distance(lhs, rhs), limit); };

  for (std::size_t n = 0; n < tr.k_squares.size(); ++n) {
    const OperatorSquare& k = tr.k_squares[n];
    const std::string tag = "k_" + std::to_string(n) + ": ";
    r.holds(tag + "(1) restrictions", "T_n, T'_n are stages of the two chains",
            same_stage(k.s, tr.a.stages.at(k.from_stage)) && same_stage(k.t, tr.b.stages.at(k.to_stage)));
    const Rat en = s.term(n);
    r.holds(tag + "(2) domain leg", "eps_n-embedding", classify_embedding(k.i0, en).at_least_eps());
    r.holds(tag + "(2) codomain leg", "eps_n-embedding", classify_embedding(k.i1, en).at_least_eps());
    r.le(tag + "(2) defect", "||T'_n o k_n - k_n o T_n|| <= eps_n", k.defect, en);
  }
  for (std::size_t n = 0; n < depth; ++n) {
    const OperatorSquare& l = tr.l_squares[n];
    const OperatorSquare& k = tr.k_squares[n];
    const OperatorSquare& k1 = tr.k_squares[n + 1];
    const std::string tag = "l_" + std::to_string(n) + ": ";
    r.holds(tag + "(1) restrictions", "T'_n, T_(n+1) are stages of the two chains",
            same_stage(l.s, tr.b.stages.at(l.from_stage)) && same_stage(l.t, tr.a.stages.at(l.to_stage)) &&
                l.from_stage == k.to_stage && l.to_stage == k1.from_stage);
    const Rat e1 = s.term(n + 1);
    r.holds(tag + "(2) domain leg", "eps_(n+1)-embedding", classify_embedding(l.i0, e1).at_least_eps());
    r.holds(tag + "(2) codomain leg", "eps_(n+1)-embedding", classify_embedding(l.i1, e1).at_least_eps());
    r.le(tag + "(2) defect", "||T_(n+1) o l_n - l_n o T'_n|| <= eps_(n+1)", l.defect, e1);
    const Rat b3 = 2 * s.term(n) + s.term(n + 1);
    close(tag + "(3) domain", "||l_n o k_n - incl|| <= 2 eps_n + eps_(n+1)", compose(l.i0, k.i0),
          inclusion_u(tr.a, k.from_stage, l.to_stage), b3);
    close(tag + "(3) codomain", "||l_n o k_n - incl|| <= 2 eps_n + eps_(n+1)", compose(l.i1, k.i1),
          inclusion_v(tr.a, k.from_stage, l.to_stage), b3);
    const Rat b4 = 2 * s.term(n + 1) + s.term(n + 2);
    const std::string tag4 = "k_" + std::to_string(n + 1) + ": ";
    close(tag4 + "(4) domain", "||k_n o l_(n-1) - incl|| <= 2 eps_n + eps_(n+1)", compose(k1.i0, l.i0),
          inclusion_u(tr.b, l.from_stage, k1.to_stage), b4);
    close(tag4 + "(4) codomain", "||k_n o l_(n-1) - incl|| <= 2 eps_n + eps_(n+1)", compose(k1.i1, l.i1),
          inclusion_v(tr.b, l.from_stage, k1.to_stage), b4);
  }
  // (5): u_n = e_n, required once e_n exists in the final stage of the side.
  auto absorbed = [](std::size_t n, std::size_t final_dim, std::size_t have) { return n >= final_dim || n < have; };
  for (std::size_t n = 0; n < depth; ++n) {
    const OperatorSquare& k1 = tr.k_squares[n + 1];
    const ChainStage& sa = tr.a.stages[k1.from_stage];
    const ChainStage& sb = tr.b.stages[k1.to_stage];
    const std::string tag = "n=" + std::to_string(n) + ": ";
    r.holds(tag + "(5) u_n, v_n", "u_n in dom T_(n+1), v_n in cod T_(n+1)",
            absorbed(n, tr.a.top().u.dim(), sa.u.dim()) && absorbed(n, tr.a.top().v.dim(), sa.v.dim()));
    r.holds(tag + "(5) u'_n, v'_n", "u'_n in dom T'_(n+1), v'_n in cod T'_(n+1)",
            absorbed(n, tr.b.top().u.dim(), sb.u.dim()) && absorbed(n, tr.b.top().v.dim(), sb.v.dim()));
  }
  Rat sum = 0;
  for (std::size_t n = 1; n <= depth && n - 1 < tr.etas.size(); ++n) {
    const Rat expect = 2 * s.term(n - 1) + 3 * s.term(n) + s.term(n + 1);
    r.eq("eta_" + std::to_string(n), "eta_n = 2 eps_(n-1) + 3 eps_n + eps_(n+1)", tr.etas[n - 1], expect);
    sum += tr.etas[n - 1];
    const OperatorSquare& k = tr.k_squares[n];
    const OperatorSquare& p = tr.k_squares[n - 1];
    close("k_" + std::to_string(n) + ": closeness to k_(n-1), domain", "||k_n restricted to T_(n-1) - k_(n-1)|| <= eta_n",
          compose(k.i0, inclusion_u(tr.a, p.from_stage, k.from_stage)),
          compose(inclusion_u(tr.b, p.to_stage, k.to_stage), p.i0), expect);
    close("k_" + std::to_string(n) + ": closeness to k_(n-1), codomain",
          "||k_n restricted to T_(n-1) - k_(n-1)|| <= eta_n",
          compose(k.i1, inclusion_v(tr.a, p.from_stage, k.from_stage)),
          compose(inclusion_v(tr.b, p.to_stage, k.to_stage), p.i1), expect);
  }
  r.lt("sum eta", "sum eta_n < 2 eps", sum, 2 * tr.eps);
  return r;
}

}  // namespace gurarii
