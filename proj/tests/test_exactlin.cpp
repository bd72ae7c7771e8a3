#include "doctest.h"
#include "gurarii/errors.hpp"
#include "gurarii/exactlin.hpp"
#include "helpers.hpp"

using namespace gurarii;
using testing::mat;
using testing::q;
using testing::vec;

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(q("6/4")) == "3/2");
  CHECK(to_string(q("-5")) == "-5");
  CHECK(to_string(q("0/7")) == "0");
  CHECK_THROWS_AS(parse_rat("3/0"), ParseError);
  CHECK_THROWS_AS(parse_rat("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rat(""), ParseError);
  CHECK_THROWS_AS(parse_rat("2/-3"), ParseError);
}

TEST_CASE("rref and rank") {
  QMat a = mat(3, {{"1", "2", "3"}, {"2", "4", "6"}, {"1", "0", "1"}});
  CHECK(rank(a) == 2);
  Echelon e = rref(a);
  CHECK(e.pivots == std::vector<std::size_t>{0, 1});
  Echelon r = rref_from_right(a);
  CHECK(r.pivots.size() == 2);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    for (std::size_t k = 0; k < r.pivots.size(); ++k) {
      CHECK(r.reduced(i, r.pivots[k]) == (i == k ? 1 : 0));
    }
  }
  CHECK(r.pivots[0] == 2);
}

TEST_CASE("solve, kernel, inverse") {
  QMat a = mat(3, {{"1", "2", "3"}, {"0", "1", "1"}});
  auto x = solve_linear(a, vec({"6", "2"}));
  REQUIRE(x);
  CHECK(a * *x == vec({"6", "2"}));
  auto k = kernel_basis(a);
  REQUIRE(k.size() == 1);
  CHECK(is_zero(a * k[0]));
  CHECK_FALSE(solve_linear(mat(2, {{"1", "1"}, {"1", "1"}}), vec({"1", "2"})));
  QMat b = mat(2, {{"2", "1"}, {"1", "1"}});
  auto inv = inverse(b);
  REQUIRE(inv);
  CHECK(b * *inv == QMat::identity(2));
  CHECK_FALSE(inverse(mat(2, {{"1", "2"}, {"2", "4"}})));
}

TEST_CASE("lp: small problems") {
  // max x + y, x + 2y <= 4, 3x + y <= 6, x, y >= 0 -> (8/5, 6/5), 14/5
  LpProblem p;
  p.objective = vec({"1", "1"});
  p.constraints = {{vec({"1", "2"}), Relation::kLessEq, Rat(4)}, {vec({"3", "1"}), Relation::kLessEq, Rat(6)}};
  p.nonneg = {true, true};
  LpResult r = lp_solve(p);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.value == q("14/5"));
  CHECK(r.point == vec({"8/5", "6/5"}));

  // free variable: min t with t >= x - 3, t >= 3 - x -> 0
  LpProblem f;
  f.objective = vec({"1", "0"});
  f.sense = Sense::kMinimize;
  f.constraints = {{vec({"1", "-1"}), Relation::kGreaterEq, Rat(-3)}, {vec({"1", "1"}), Relation::kGreaterEq, Rat(3)}};
  LpResult fr = lp_solve(f);
  REQUIRE(fr.status == LpStatus::kOptimal);
  CHECK(fr.value == 0);

  LpProblem inf;
  inf.objective = vec({"1"});
  inf.constraints = {{vec({"1"}), Relation::kLessEq, Rat(1)}, {vec({"1"}), Relation::kGreaterEq, Rat(2)}};
  CHECK(lp_solve(inf).status == LpStatus::kInfeasible);

  LpProblem unb;
  unb.objective = vec({"1"});
  unb.constraints = {{vec({"1"}), Relation::kGreaterEq, Rat(0)}};
  CHECK(lp_solve(unb).status == LpStatus::kUnbounded);
}

TEST_CASE("lp: random duality check") {
  testing::RatGen g(7);
  for (int it = 0; it < 30; ++it) {
    // max c.x, A x <= b, x >= 0 with b >= 0 (feasible at 0); dual min b.y, A^T y >= c, y >= 0.
    const std::size_t m = 3, n = 3;
    QMat a = g.matrix(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = abs(a(i, j)) + Rat(1) / 2;
    QVec b, c = g.vector(n);
    for (std::size_t i = 0; i < m; ++i) b.push_back(g.positive());
    LpProblem pr;
    pr.objective = c;
    pr.nonneg.assign(n, true);
    for (std::size_t i = 0; i < m; ++i) pr.constraints.push_back({a.row(i), Relation::kLessEq, b[i]});
    LpProblem du;
    du.objective = b;
    du.sense = Sense::kMinimize;
    du.nonneg.assign(m, true);
    const QMat at = a.transpose();
    for (std::size_t j = 0; j < n; ++j) du.constraints.push_back({at.row(j), Relation::kGreaterEq, c[j]});
    LpResult rp = lp_solve(pr), rd = lp_solve(du);
    REQUIRE(rp.status == LpStatus::kOptimal);
    REQUIRE(rd.status == LpStatus::kOptimal);
    CHECK(rp.value == rd.value);
  }
}
