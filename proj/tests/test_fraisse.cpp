#include "doctest.h"
#include "gurarii/errors.hpp"
#include "gurarii/fraisse.hpp"
#include "helpers.hpp"

using namespace gurarii;
using testing::mat;
using testing::q;
using testing::vec;

namespace {

bool same_chain(const Chain& a, const Chain& b) {
  if (a.size() != b.size() || a.log.size() != b.log.size()) return false;
  for (std::size_t n = 0; n < a.size(); ++n) {
    if (!(a.stages[n].f == b.stages[n].f)) return false;
  }
  for (std::size_t n = 0; n < a.log.size(); ++n) {
    if (a.log[n].label != b.log[n].label || a.log[n].realized != b.log[n].realized) return false;
  }
  return true;
}

std::size_t first_stage_with(const Chain& c, std::size_t du, std::size_t dv) {
  for (std::size_t n = 0; n < c.size(); ++n) {
    if (c.stages[n].u.dim() >= du && c.stages[n].v.dim() >= dv) return n;
  }
  return c.size();
}

}  // namespace

TEST_CASE("enumerate_tasks") {
  Chain c = zero_chain(6, 1);
  auto one = enumerate_tasks(c, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].k == 0);
  CHECK(one[0].t.domain().dim() == 0);
  CHECK(one[0].t.codomain().dim() == 0);
  Chain built = build_chain({6, 6, 3});
  auto a = enumerate_tasks(built, 30), b = enumerate_tasks(built, 30);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].label == b[i].label);
    CHECK(a[i].t == b[i].t);
  }
  std::size_t zeros = 0;
  for (const Task& t : enumerate_tasks(c, 50)) {
    if (t.k == 0 && t.t.domain().dim() == 0 && t.t.codomain().dim() == 0) ++zeros;
  }
  CHECK(zeros >= 2);
  CHECK_THROWS_AS(enumerate_tasks(c, 0), PreconditionError);
}

TEST_CASE("step_chain examples") {
  Chain c = zero_chain(6, 0);
  const Space z;
  Task late{LinMap::zero(z, z), LinMap::identity(z), LinMap::identity(z), 5, "late"};
  Chain r = step_chain(c, late);
  REQUIRE(r.size() == 2);
  CHECK_FALSE(r.log.back().realized);
  CHECK(r.stages[1].f == r.stages[0].f);

  // A task with k = 0 against stage 0: F_1 is T itself.
  LinMap t(mat(2, {{"1/2", "0"}}), l_inf(2), real_line());
  Task realize{t, LinMap::zero(z, l_inf(2)), LinMap::zero(z, real_line()), 0, "direct"};
  Chain s = step_chain(c, realize);
  REQUIRE(s.log.back().realized);
  CHECK(s.stages[1].f.matrix() == t.matrix());
  CHECK(s.stages[1].u == l_inf(2));
  CHECK(s.stages[1].v == real_line());
  CHECK(verify_chain(s).pass());

  // T already a restriction of F_1: the new stage factors through.
  const ChainStage& st = s.stages[1];
  Task again{st.f, LinMap::identity(st.u), LinMap::identity(st.v), 1, "again"};
  Chain u = step_chain(s, again);
  REQUIRE(u.log.back().realized);
  CHECK(u.stages[2].f == st.f);
  Report rep = verify_chain(u);
  CHECK(rep.pass());
}

TEST_CASE("build_chain") {
  Chain zero = build_chain({0, 6, 1});
  CHECK(zero.size() == 1);
  Chain a = build_chain({20, 6, 1}), b = build_chain({20, 6, 1});
  CHECK(same_chain(a, b));
  Report r = verify_chain(a);
  for (const auto& f : r.failures()) INFO(f);
  CHECK(r.pass());
  std::size_t realized = 0;
  for (const auto& e : a.log) realized += e.realized ? 1 : 0;
  CHECK(realized >= 5);
  for (const auto& s : a.stages) {
    CHECK(s.u.dim() <= 6);
    CHECK(s.v.dim() <= 6);
  }
}

TEST_CASE("g_witness examples") {
  const Chain c = build_chain({20, 6, 1});
  const Rat half = q("1/2");
  // X0 = X, Y0 = Y, T a stage: the given inclusions come back.
  {
    const std::size_t n = c.size() - 1;
    const ChainStage& st = c.stages[n];
    OperatorSquare seed{st.f, st.f, LinMap::identity(st.u), LinMap::identity(st.v), Rat(0), Rat(0), n, n};
    GWitness w = g_witness(c, st.f, LinMap::identity(st.u), LinMap::identity(st.v), seed, n, half);
    CHECK(w.m == n);
    CHECK(w.i_prime.matrix() == QMat::identity(st.u.dim()));
    CHECK(verify_g_witness(w, st.f, LinMap::identity(st.u), LinMap::identity(st.v), seed, n, half).pass());
  }
  // X0 = Y0 = 0, T = 0 on lines.
  {
    const Space z;
    const ChainStage& st = c.stages[0];
    LinMap t = LinMap::zero(real_line(), real_line());
    LinMap x0 = LinMap::zero(z, real_line());
    OperatorSquare seed{LinMap::zero(z, z), st.f, LinMap::identity(z), LinMap::identity(z), Rat(0), Rat(0), 0, 0};
    GWitness w = g_witness(c, t, x0, x0, seed, 0, half);
    CHECK(w.m == c.size());
    Report r = verify_g_witness(w, t, x0, x0, seed, 0, half);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.pass());
  }
  // A 2-dim T extending a realized 1-dim T0.
  {
    const std::size_t n = first_stage_with(c, 1, 1);
    REQUIRE(n < c.size());
    const ChainStage& st = c.stages[n];
    // X0 = U_n, X = U_n (+)_1 R, T = F_n on the first block and a new column.
    SumResult xs = l1_sum(st.u, real_line());
    SumResult ys = l1_sum(st.v, real_line());
    QMat m(ys.space.dim(), xs.space.dim());
    for (std::size_t i = 0; i < st.v.dim(); ++i)
      for (std::size_t j = 0; j < st.u.dim(); ++j) m(i, j) = st.f.matrix()(i, j);
    m(ys.space.dim() - 1, xs.space.dim() - 1) = q("1/2");
    m(0, xs.space.dim() - 1) = q("1/2");
    LinMap t(m, xs.space, ys.space);
    REQUIRE(operator_norm(t) <= 1);
    OperatorSquare seed{st.f, st.f, LinMap::identity(st.u), LinMap::identity(st.v), Rat(0), Rat(0), n, n};
    GWitness w = g_witness(c, t, xs.inl, ys.inl, seed, n, half);
    CHECK(w.delta == q("1/6"));
    Report r = verify_g_witness(w, t, xs.inl, ys.inl, seed, n, half);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.pass());
    CHECK(verify_chain(w.chain).pass());
  }
}

TEST_CASE("g_witness with an inexact seed") {
  const Chain c = build_chain({20, 6, 1});
  const std::size_t n = first_stage_with(c, 1, 1);
  const ChainStage& st = c.stages[n];
  const Rat s = q("9/10");
  // S = F_n on U_n, legs scaled by 9/10: a 1/9-embedding that commutes.
  OperatorSquare seed{st.f, st.f, LinMap(s * QMat::identity(st.u.dim()), st.u, st.u),
                      LinMap(s * QMat::identity(st.v.dim()), st.v, st.v), Rat(0), Rat(0), n, n};
  GWitness w = g_witness(c, st.f, LinMap::identity(st.u), LinMap::identity(st.v), seed, n, q("1/2"));
  Report r = verify_g_witness(w, st.f, LinMap::identity(st.u), LinMap::identity(st.v), seed, n, q("1/2"));
  for (const auto& f : r.failures()) INFO(f);
  CHECK(r.pass());
  CHECK_THROWS_AS(g_witness(c, st.f, LinMap::identity(st.u), LinMap::identity(st.v), seed, n, q("1/10")),
                  PreconditionError);
}

TEST_CASE("space_witness examples") {
  const Chain c = build_chain({20, 6, 1});
  const Rat half = q("1/2");
  {
    const std::size_t n = c.size() - 1;
    const ChainStage& st = c.stages[n];
    SpaceWitness w = space_witness(c, Side::kDomain, LinMap::identity(st.u), LinMap::identity(st.u), n, half);
    CHECK(w.f.matrix() == QMat::identity(st.u.dim()));
  }
  {
    const Space z;
    SpaceWitness w = space_witness(c, Side::kCodomain, LinMap::zero(z, real_line()), LinMap::zero(z, c.stages[0].v), 0,
                                   half);
    CHECK(classify_embedding(w.f, half).at_least_eps());
    CHECK(w.distance == 0);
  }
  {
    const std::size_t n = first_stage_with(c, 1, 0);
    const ChainStage& st = c.stages[n];
    LinMap x0(mat(1, {{"1"}, {"0"}}), real_line(), l_inf(2));
    // i: a line of norm 1 in U_n.
    QVec e = unit_vec(st.u.dim(), 0);
    const Rat ne = norm_eval(st.u, e);
    LinMap i(QMat::from_columns(st.u.dim(), {Rat(1 / ne) * e}), real_line(), st.u);
    SpaceWitness w = space_witness(c, Side::kDomain, x0, i, n, half);
    CHECK(w.distance <= half);
    CHECK(classify_embedding(w.f, half).at_least_eps());
  }
}

TEST_CASE("kernel and surjectivity witnesses") {
  const Chain c = build_chain({20, 6, 1});
  const Rat half = q("1/2");
  {
    const Space z;
    
    SpaceWitness w = kernel_witness(c, LinMap::zero(z, real_line()), LinMap::zero(z, c.stages[0].u), 0, half);
    CHECK((w.chain.stages[w.m].f.matrix() * w.f.matrix()).is_zero());
    CHECK(classify_embedding(w.f, half).at_least_eps());
  }
  {
    const ChainStage& st = c.stages[0];
    CHECK_THROWS_AS(surjectivity_witness(c, QVec{}, 0), PreconditionError);
    (void)st;
  }
  const std::size_t n = c.size() - 1;
  const ChainStage& st = c.stages[n];
  testing::RatGen g(9);
  for (int it = 0; it < 3; ++it) {
    QVec v = g.vector(st.v.dim());
    if (is_zero(v)) v[0] = 1;
    SurjectivityWitness w = surjectivity_witness(c, v, n);
    const ChainStage& sm = w.chain.stages[w.m];
    QVec padded = v;
    padded.resize(sm.v.dim(), Rat(0));
    CHECK(sm.f.matrix() * w.u == padded);
  }
}

TEST_CASE("embed_operator examples") {
  const Chain c = build_chain({20, 6, 1});
  {
    const Space z;
    EmbedTranscript tr = embed_operator(c, LinMap::zero(z, z), EpsSchedule::dyadic(), 3);
    CHECK(tr.squares.size() == 4);
    CHECK(verify_embedding(tr).pass());
  }
  {
    EmbedTranscript tr = embed_operator(c, LinMap::identity(real_line()), EpsSchedule::dyadic(), 4);
    Report r = verify_embedding(tr);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.pass());
  }
  {
    LinMap jordan(mat(2, {{"0", "1"}, {"0", "0"}}), l_inf(2), l_inf(2));
    EmbedTranscript tr = embed_operator(c, jordan, EpsSchedule::dyadic(), 4);
    Report r = verify_embedding(tr);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.pass());
  }
}

TEST_CASE("back_and_forth examples") {
  const Chain a = build_chain({8, 4, 1});
  const Space z;
  OperatorSquare zero{a.stages[0].f, a.stages[0].f, LinMap::identity(z), LinMap::identity(z), Rat(0), Rat(0), 0, 0};
  {
    BnfTranscript tr = back_and_forth(a, a, zero, q("1/2"), 3);
    Report r = verify_bnf(tr);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.pass());
  }
  {
    const Chain b = build_chain({8, 4, 2});
    BnfTranscript tr = back_and_forth(a, b, zero, q("1/2"), 3);
    Report r = verify_bnf(tr);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.pass());
  }
  {
    const Chain a2 = build_chain({12, 4, 1});
    const std::size_t n = first_stage_with(a2, 1, 1);
    REQUIRE(n < a2.size());
    const ChainStage& st = a2.stages[n];
    const Rat s = q("9/10");
    OperatorSquare seed{st.f, st.f, LinMap(s * QMat::identity(st.u.dim()), st.u, st.u),
                        LinMap(s * QMat::identity(st.v.dim()), st.v, st.v), Rat(0), Rat(0), n, n};
    CHECK_THROWS_AS(back_and_forth(a2, a2, seed, q("1/10"), 3), PreconditionError);
    BnfTranscript tr = back_and_forth(a2, a2, seed, q("1/2"), 2);
    Report r = verify_bnf(tr);
    for (const auto& f : r.failures()) INFO(f);
    CHECK(r.pass());
  }
}
