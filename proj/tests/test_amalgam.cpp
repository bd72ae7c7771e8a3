#include "doctest.h"
#include "gurarii/amalgam.hpp"
#include "gurarii/errors.hpp"
#include "helpers.hpp"

using namespace gurarii;
using testing::mat;
using testing::q;
using testing::vec;

TEST_CASE("pushout over the zero space is the l1 sum") {
  Space x = l_inf(2), y = real_line();
  PushoutResult p = pushout(LinMap::zero(Space(), x), LinMap::zero(Space(), y));
  SumResult s = l1_sum(x, y);
  CHECK(p.w == s.space);
  CHECK(p.g.matrix() == s.inl.matrix());
  CHECK(p.j.matrix() == s.inr.matrix());
  CHECK(p.delta_basis.empty());
}

TEST_CASE("pushout along the identity") {
  Space x = l_inf(2), y = l_one(2);
  LinMap f(mat(2, {{"1/2", "0"}, {"0", "1/2"}}), x, y);
  PushoutResult p = pushout(LinMap::identity(x), f);
  // W is carried on the first block's coordinates; j identifies it with Y.
  CHECK(p.w.dim() == 2);
  CHECK(is_isometric(p.j));
  CHECK(inverse(p.j.matrix()).has_value());
  CHECK(p.g.matrix() == p.j.matrix() * f.matrix());
}

TEST_CASE("pushout of a line in the square") {
  Space x = l_inf(2), z = real_line(), y = real_line();
  LinMap i(mat(1, {{"1"}, {"0"}}), z, x);
  LinMap f = LinMap::identity(z);
  PushoutResult p = pushout(i, f);
  REQUIRE(p.delta_basis.size() == 1);
  CHECK(p.delta_basis[0] == vec({"1", "0", "-1"}));
  std::vector<QVec> pts = {vec({"1", "1", "0"}), vec({"1", "-1", "0"}), vec({"0", "0", "1"})};
  std::vector<QVec> imgs;
  const QMat qm = hstack(p.g.matrix(), p.j.matrix());
  for (const auto& v : pts) imgs.push_back(qm * v);
  CHECK(p.w.ball() == complete_representations(Ball{2, imgs, std::nullopt}));
  CHECK(compose(p.g, i).matrix() == compose(p.j, f).matrix());
  CHECK(is_isometric(p.j));
}

TEST_CASE("pushout rejects expansive maps") {
  LinMap i(mat(1, {{"2"}}), real_line(), real_line());
  CHECK_THROWS_AS(pushout(i, LinMap::identity(real_line())), PreconditionError);
}

TEST_CASE("correction sum examples") {
  Space x = l_inf(2), y = l_one(1);
  CorrectionResult c = correction_sum(LinMap::zero(x, y), Rat(1));
  CHECK(c.z0 == l1_sum(x, y).space);

  CorrectionResult r = correction_sum(LinMap::identity(real_line()), q("1/2"));
  CHECK(r.z0.vertices() == canonical_set({vec({"1", "0"}), vec({"0", "1"}), vec({"2", "-2"})}));
  CHECK(norm_eval(r.z0, vec({"1", "-1"})) == q("1/2"));
  CHECK(correction_norm_inf(r, vec({"1", "-1"})) == q("1/2"));
  CHECK(is_isometric(r.ix));
  CHECK(is_isometric(r.jy));
  CHECK(map_distance(r.ix, compose(r.jy, r.f)) <= q("1/2"));
  CHECK(correction_norm_inf(r, vec({"0", "0"})) == 0);
  CHECK(correction_norm_inf(r, vec({"1", "0"})) == 1);

  CHECK_THROWS_AS(correction_sum(LinMap::identity(real_line()), Rat(0)), PreconditionError);
  CHECK_THROWS_AS(correction_sum(LinMap::zero(x, y), q("1/2")), PreconditionError);
}

TEST_CASE("correction sum: two-sided input mode") {
  LinMap f(mat(1, {{"5/4"}}), real_line(), real_line());
  CHECK_THROWS_AS(correction_sum(f, q("1/2")), PreconditionError);
  CorrectionResult c = correction_sum(f, q("1/2"), Convention::kTwoSided);
  CHECK(is_isometric(c.ix));
  CHECK(is_isometric(c.jy));
  CHECK(map_distance(c.ix, compose(c.jy, f)) <= q("1/2"));
}

TEST_CASE("mediating map examples") {
  CorrectionResult c = correction_sum(LinMap::identity(real_line()), q("1/2"));
  CHECK(mediating_map(c, c.ix, c.jy).matrix() == QMat::identity(2));
  LinMap id = LinMap::identity(real_line());
  LinMap h = mediating_map(c, id, id);
  CHECK(h.matrix() == mat(2, {{"1", "1"}}));
  CHECK(operator_norm(h) == 1);

  CorrectionResult z = correction_sum(LinMap::zero(real_line(), real_line()), Rat(1));
  CHECK(mediating_map(z, LinMap::zero(real_line(), real_line()), LinMap::zero(real_line(), real_line())).matrix() ==
        QMat(1, 2));
  LinMap neg(mat(1, {{"-1"}}), real_line(), real_line());
  CHECK_THROWS_AS(mediating_map(c, id, neg), PreconditionError);
}

TEST_CASE("square sum examples") {
  Space x = l_inf(2);
  LinMap id = LinMap::identity(x);
  SquareSumResult s = square_sum(id, id, id, id, q("1/4"), q("1/4"));
  CHECK(s.map.matrix() == QMat::identity(4));
  CHECK(operator_norm(s.map) <= 1);
  LinMap f(mat(1, {{"4/5"}}), real_line(), real_line());
  LinMap zero = LinMap::zero(real_line(), real_line());
  SquareSumResult z = square_sum(zero, zero, f, f, q("1/4"), q("1/8"));
  CHECK(z.map.matrix().is_zero());
  CHECK_THROWS_AS(square_sum(id, LinMap::zero(x, x), id, id, q("1/4"), q("1/4")), PreconditionError);
}

TEST_CASE("epsilon monotonicity of the correction ball") {
  LinMap f(mat(2, {{"1", "0"}, {"0", "4/5"}}), l_inf(2), l_inf(2));
  CorrectionResult a = correction_sum(f, q("1/4"));
  CorrectionResult b = correction_sum(f, q("1/2"));
  // A smaller eps makes the correction direction cheaper: smaller norm, larger ball.
  CHECK(contains(a.z0.ball(), b.z0.ball()));
  CHECK_FALSE(contains(b.z0.ball(), a.z0.ball()));
}
