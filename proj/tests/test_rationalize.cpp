#include "doctest.h"
#include "gurarii/errors.hpp"
#include "gurarii/rationalize.hpp"
#include "helpers.hpp"

using namespace gurarii;
using testing::mat;
using testing::q;
using testing::vec;

TEST_CASE("extend_functional examples") {
  Space x = l_inf(2);
  CHECK(extend_functional(vec({"1", "-1/2"}), LinMap::identity(x)) == vec({"1", "-1/2"}));
  LinMap incl(mat(1, {{"1"}, {"0"}}), real_line(), x);
  CHECK(extend_functional(vec({"0"}), incl) == vec({"0", "0"}));
  QVec psi = extend_functional(vec({"1"}), incl);
  CHECK(psi == vec({"1", "0"}));
  CHECK(dual_norm_eval(x, psi) == 1);
  LinMap bad(mat(1, {{"1/2"}, {"0"}}), real_line(), x);
  CHECK_THROWS_AS(extend_functional(vec({"1"}), bad), PreconditionError);
}

TEST_CASE("repair_norm examples") {
  Space y = l_one(2);
  NormRepair same = repair_norm(y, LinMap::identity(y), q("1/4"));
  CHECK(same.repaired == y);

  NormRepair scaled = repair_norm(y, LinMap::zero(Space(), y), q("1/4"));
  CHECK(norm_eval(scaled.repaired, vec({"1", "0"})) == q("4/5"));

  LinMap incl(mat(1, {{"1"}, {"0"}}), real_line(), y);
  NormRepair r = repair_norm(y, incl, q("1/4"));
  CHECK(norm_eval(r.repaired, vec({"1", "0"})) == 1);
  CHECK(is_isometric(r.pinned));
  CHECK(delta_equivalent(y, r.repaired, q("1/4")));
  for (const auto& v : y.vertices()) {
    const Rat n = norm_eval(r.repaired, v);
    CHECK(n >= q("4/5"));
    CHECK(n <= q("5/4"));
  }
}

TEST_CASE("repair_operator examples") {
  Space x = l_inf(2);
  LinMap t(mat(2, {{"1/2", "1/2"}, {"0", "1"}}), x, x);
  OperatorRepair a = repair_operator(t, LinMap::identity(x), LinMap::identity(x), q("1/4"));
  CHECK_FALSE(a.rescaled);
  CHECK(a.x.repaired == x);
  CHECK(a.y.repaired == x);

  LinMap s(mat(1, {{"6/5"}}), real_line(), real_line());
  OperatorRepair b = repair_operator(s, LinMap::zero(Space(), real_line()), LinMap::zero(Space(), real_line()), q("1/5"));
  CHECK(b.rescaled);
  CHECK(b.x.repaired == scaled_line(q("36/25")));
  CHECK(operator_norm(b.t) == q("5/6"));
  CHECK(delta_equivalent(real_line(), b.x.repaired, q("11/25")));

  LinMap big(mat(1, {{"3/2"}}), real_line(), real_line());
  CHECK_THROWS_AS(repair_operator(big, LinMap::zero(Space(), real_line()), LinMap::zero(Space(), real_line()), q("1/5")),
                  PreconditionError);
}
