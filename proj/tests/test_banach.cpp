#include "doctest.h"
#include "gurarii/banach.hpp"
#include "gurarii/errors.hpp"
#include "helpers.hpp"

using namespace gurarii;
using testing::mat;
using testing::q;
using testing::vec;

TEST_CASE("norm_eval examples") {
  CHECK(norm_eval(l_inf(2), vec({"1", "-2"})) == 2);
  CHECK(norm_eval(l_one(2), vec({"1", "1"})) == 2);
  Space s(Ball{2, std::vector<QVec>{vec({"1", "0"}), vec({"1", "1"})}, std::nullopt});
  CHECK(norm_eval(s, vec({"0", "1"})) == 2);
  CHECK_THROWS_AS(norm_eval(l_inf(2), vec({"1"})), DimensionError);
}

TEST_CASE("dual_norm_eval examples") {
  CHECK(dual_norm_eval(l_one(2), vec({"1", "0"})) == 1);
  CHECK(dual_norm_eval(l_inf(2), vec({"1", "1"})) == 2);
  CHECK(dual_norm_eval(l_inf(3), zero_vec(3)) == 0);
}

TEST_CASE("operator_norm examples") {
  CHECK(operator_norm(LinMap::zero(l_inf(2), l_one(3))) == 0);
  CHECK(operator_norm(LinMap::identity(l_inf(2))) == 1);
  CHECK(operator_norm(LinMap(mat(2, {{"1", "1"}}), l_inf(2), real_line())) == 2);
}

TEST_CASE("lower_isometry_bound examples") {
  CHECK(lower_isometry_bound(LinMap::identity(l_one(3))).value == 1);
  CHECK(lower_isometry_bound(LinMap(mat(2, {{"1", "0"}}), l_inf(2), real_line())).value == 0);
  CHECK(lower_isometry_bound(LinMap(mat(1, {{"1"}, {"1/2"}}), real_line(), l_inf(2))).value == 1);
}

TEST_CASE("classify_embedding examples") {
  const Rat half = q("1/2");
  CHECK(classify_embedding(LinMap::identity(l_inf(2)), half).verdict == EmbeddingVerdict::kIsometric);
  CHECK(classify_embedding(LinMap(mat(1, {{"4/5"}}), real_line(), real_line()), half).verdict ==
        EmbeddingVerdict::kStrictEps);
  CHECK(classify_embedding(LinMap(mat(1, {{"2/3"}}), real_line(), real_line()), half).verdict ==
        EmbeddingVerdict::kEps);
  CHECK(classify_embedding(LinMap(mat(1, {{"1/2"}}), real_line(), real_line()), half).verdict ==
        EmbeddingVerdict::kNotEps);
  CHECK(embedding_defect(LinMap(mat(1, {{"4/5"}}), real_line(), real_line())) == q("1/4"));
}

TEST_CASE("map_distance examples") {
  LinMap id = LinMap::identity(real_line());
  CHECK(map_distance(id, id) == 0);
  CHECK(map_distance(LinMap::identity(l_inf(1)), LinMap::zero(l_inf(1), l_inf(1))) == 1);
  CHECK(map_distance(id, LinMap(mat(1, {{"3/4"}}), real_line(), real_line())) == q("1/4"));
}

TEST_CASE("l1_sum examples") {
  SumResult a = l1_sum(real_line(), real_line());
  CHECK(a.space == l_one(2));
  SumResult b = l1_sum(l_inf(2), Space());
  CHECK(b.space == l_inf(2));
  SumResult c = l1_sum(l_inf(2), real_line());
  CHECK(c.space.vertices() == canonical_set({vec({"1", "1", "0"}), vec({"1", "-1", "0"}), vec({"0", "0", "1"})}));
  CHECK(c.space.ball() == complete_representations(Ball{3, c.space.vertices(), std::nullopt}));
  CHECK(is_isometric(c.inl));
  CHECK(is_isometric(c.inr));
}

TEST_CASE("quotient examples") {
  QuotientResult a = quotient(l_inf(2), {});
  CHECK(a.space == l_inf(2));
  QuotientResult b = quotient(l_one(2), {vec({"1", "-1"})});
  CHECK(b.space == real_line());
  CHECK(b.q.matrix() == mat(2, {{"1", "1"}}));
  QuotientResult c = quotient(l_inf(2), {vec({"0", "1"})});
  CHECK(c.space == real_line());
  CHECK(c.q.matrix() == mat(2, {{"1", "0"}}));
  CHECK(c.q.matrix() * c.section == QMat::identity(1));
  CHECK_THROWS_AS(quotient(l_inf(2), {vec({"1", "1"}), vec({"2", "2"})}), PreconditionError);
}

TEST_CASE("subspace restricts the norm") {
  SubspaceResult s = subspace(l_inf(2), mat(1, {{"1"}, {"1/2"}}));
  CHECK(s.space == real_line());
  CHECK(is_isometric(s.incl));
}

TEST_CASE("properties on random spaces") {
  testing::RatGen g(3);
  for (int it = 0; it < 12; ++it) {
    const std::size_t n = 1 + it % 3, m = 1 + (it / 3) % 3;
    Space x = g.space(n), y = g.space(m);
    LinMap t(g.matrix(m, n), x, y);
    const Rat up = operator_norm(t);
    const LowerBound lo = lower_isometry_bound(t);
    CHECK(norm_eval(x, lo.witness) == 1);
    CHECK(norm_eval(y, t.apply(lo.witness)) == lo.value);
    for (const QVec& v : testing::sphere_sample(x, g, 40)) {
      const Rat nv = norm_eval(y, t.apply(v));
      CHECK(nv <= up);
      CHECK(nv >= lo.value);
    }
    SumResult s = l1_sum(x, y);
    for (int k = 0; k < 5; ++k) {
      QVec a = g.vector(n), b = g.vector(m);
      CHECK(norm_eval(s.space, concat(a, b)) == norm_eval(x, a) + norm_eval(y, b));
    }
  }
}
