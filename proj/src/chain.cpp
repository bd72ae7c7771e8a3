#include <random>
#include <stdexcept>
#include <string>

#include "gurarii/amalgam.hpp"
#include "gurarii/errors.hpp"
#include "gurarii/fraisse.hpp"

namespace gurarii {

bool OperatorSquare::is_embedding() const { return sgn(eps) == 0; }

OperatorSquare make_square(LinMap s, LinMap t, LinMap i0, LinMap i1) {
  if (!(i0.domain() == s.domain()) || !(i0.codomain() == t.domain()) || !(i1.domain() == s.codomain()) ||
      !(i1.codomain() == t.codomain())) {
    throw DimensionError("make_square: maps do not form a square");
  }
  const Rat defect = map_distance(compose(t, i0), compose(i1, s));
  Rat eps = defect;
  for (const LinMap* leg : {&i0, &i1}) {
    const std::optional<Rat> d = embedding_defect(*leg);
    if (!d) throw PreconditionError("make_square: a leg is not an almost isometric embedding");
    if (*d > eps) eps = *d;
  }
  return OperatorSquare{std::move(s), std::move(t), std::move(i0), std::move(i1), eps, defect, 0, 0};
}

Chain zero_chain(std::size_t dim_cap, std::uint64_t seed) {
  Chain c;
  c.dim_cap = dim_cap;
  c.seed = seed;
  const Space z;
  c.stages.push_back(ChainStage{z, z, LinMap::zero(z, z), LinMap::identity(z), LinMap::identity(z)});
  return c;
}

LinMap inclusion_u(const Chain& c, std::size_t from, std::size_t to) {
  const Space& a = c.stages.at(from).u;
  const Space& b = c.stages.at(to).u;
  return LinMap(QMat::embedding(b.dim(), a.dim()), a, b);
}

LinMap inclusion_v(const Chain& c, std::size_t from, std::size_t to) {
  const Space& a = c.stages.at(from).v;
  const Space& b = c.stages.at(to).v;
  return LinMap(QMat::embedding(b.dim(), a.dim()), a, b);
}

namespace {

std::pair<std::size_t, std::size_t> unpair(std::size_t code) {
  std::size_t w = 0;
  while ((w + 1) * (w + 2) / 2 <= code) ++w;
  const std::size_t t = code - w * (w + 1) / 2;
  return {w - t, t};
}

std::size_t code_at(std::size_t position) {
  std::size_t p = position + 1;
  while (p % 2 == 0) p /= 2;
  return (p - 1) / 2;
}

Task zero_task(std::size_t k, std::string label) {
  const Space z;
  return Task{LinMap::zero(z, z), LinMap::identity(z), LinMap::identity(z), k, std::move(label)};
}

Rat small_entry(std::mt19937_64& eng) {
  static const char* const kValues[] = {"-1", "-1/2", "0", "1/2", "1"};
  return parse_rat(kValues[eng() % 5]);
}

Space template_space(std::mt19937_64& eng, std::size_t d) {
  if (d == 0) return Space();
  switch (eng() % 3) {
    case 0: return l_inf(d);
    case 1: return l_one(d);
    default: break;
  }
  static const char* const kScales[] = {"1", "2", "1/2"};
  std::vector<QVec> pts;
  for (std::size_t i = 0; i < d; ++i) pts.push_back(parse_rat(kScales[eng() % 3]) * unit_vec(d, i));
  QVec extra;
  for (std::size_t i = 0; i < d; ++i) extra.push_back(small_entry(eng));
  pts.push_back(std::move(extra));
  return Space(Ball{d, std::move(pts), std::nullopt});
}

QMat random_matrix(std::mt19937_64& eng, std::size_t rows, std::size_t cols) {
  QMat m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = small_entry(eng);
  return m;
}

LinMap shrink_to_contraction(const LinMap& g) {
  const Rat n = operator_norm(g);
  if (n <= 1) return g;
  return LinMap(Rat(1 / n) * g.matrix(), g.domain(), g.codomain());
}

// T = [[F_k, C], [0, S]] on X = U_k (+)_(g,1) E_X, Y = V_k (+)_(h,1) E_Y.
Task template_task(const Chain& c, std::size_t k, std::size_t t, const std::string& label) {
  const ChainStage& st = c.stages[k];
  std::seed_seq seq{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32),
                    static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(t)};
  std::mt19937_64 eng(seq);
  std::size_t dx = eng() % 2, dy = eng() % 2;
  if (dx == 0 && dy == 0) dy = 1;
  const std::size_t ak = st.u.dim(), bk = st.v.dim();
  if (c.top().u.dim() + dx > c.dim_cap) dx = 0;
  if (c.top().v.dim() + dy > c.dim_cap) dy = 0;
  if (dx == 0 && dy == 0) {
    return Task{st.f, LinMap::identity(st.u), LinMap::identity(st.v), k, label + " (restriction, cap reached)"};
  }
  const Space ex = template_space(eng, dx);
  const Space ey = template_space(eng, dy);
  const LinMap g = shrink_to_contraction(LinMap(random_matrix(eng, dx, ak), st.u, ex));
  const LinMap h = shrink_to_contraction(LinMap(random_matrix(eng, dy, bk), st.v, ey));
  const std::size_t cap = std::max(kDefaultDimCap, std::max(ak + dx, bk + dy));
  const CorrectionResult x = correction_sum(g, Rat(1), Convention::kNonexpansive, cap);
  const CorrectionResult y = correction_sum(h, Rat(1), Convention::kNonexpansive, cap);

  QMat cm = random_matrix(eng, bk, dx);
  QMat sm = random_matrix(eng, dy, dx);
  auto assemble = [&](const QMat& cc, const QMat& ss) {
    QMat m(bk + dy, ak + dx);
    for (std::size_t r = 0; r < bk; ++r)
      for (std::size_t col = 0; col < ak; ++col) m(r, col) = st.f.matrix()(r, col);
    for (std::size_t r = 0; r < bk; ++r)
      for (std::size_t col = 0; col < dx; ++col) m(r, ak + col) = cc(r, col);
    for (std::size_t r = 0; r < dy; ++r)
      for (std::size_t col = 0; col < dx; ++col) m(bk + r, ak + col) = ss(r, col);
    return LinMap(std::move(m), x.z0, y.z0);
  };
  LinMap op = assemble(cm, sm);
  const Rat half(1, 2);
  for (int tries = 0; tries < 4 && operator_norm(op) > 1; ++tries) {
    cm = half * cm;
    sm = half * sm;
    op = assemble(cm, sm);
  }
  // With the coupling constant 1 the projection onto the first block is
  // nonexpansive, so dropping C and S always works.
  if (operator_norm(op) > 1) op = assemble(QMat(bk, dx), QMat(dy, dx));
  return Task{std::move(op), x.ix, y.ix, k, label};
}

void append_repeat(Chain& c, LogEntry entry) {
  const ChainStage& prev = c.top();
  ChainStage s{prev.u, prev.v, prev.f, LinMap::identity(prev.u), LinMap::identity(prev.v)};
  c.stages.push_back(std::move(s));
  entry.stage = c.stages.size() - 1;
  c.log.push_back(std::move(entry));
}

}  // namespace

Task task_at(const Chain& c, std::size_t position) {
  const std::size_t code = code_at(position);
  const auto [k, t] = unpair(code);
  const std::string label = "k=" + std::to_string(k) + ",t=" + std::to_string(t);
  if (code == 0) return zero_task(0, label + " (zero task)");
  if (k >= c.size()) return zero_task(k, label + " (no payload: stage not built yet)");
  if (t == 0) {
    const ChainStage& st = c.stages[k];
    return Task{st.f, LinMap::identity(st.u), LinMap::identity(st.v), k, label + " (restriction)"};
  }
  return template_task(c, k, t, label);
}

std::vector<Task> enumerate_tasks(const Chain& c, std::size_t budget) {
  if (budget == 0) throw PreconditionError("enumerate_tasks: budget >= 1 required");
  std::vector<Task> out;
  out.reserve(budget);
  for (std::size_t p = 0; p < budget; ++p) out.push_back(task_at(c, p));
  return out;
}

std::optional<std::string> star_failure(const Chain& c, const Task& task) {
  const std::size_t n = c.size();
  if (task.k >= n) return "k = " + std::to_string(task.k) + " is not below n = " + std::to_string(n);
  const ChainStage& st = c.stages[task.k];
  if (!(task.i.domain() == st.u)) return std::string("domain of i is not U_k");
  if (!(task.j.domain() == st.v)) return std::string("domain of j is not V_k");
  if (!(task.t.domain() == task.i.codomain()) || !(task.t.codomain() == task.j.codomain())) {
    return std::string("T does not act between the codomains of i and j");
  }
  if (!(task.t.matrix() * task.i.matrix() == task.j.matrix() * st.f.matrix())) {
    return std::string("T o i != j o F_k");
  }
  if (operator_norm(task.t) > 1) return std::string("T is not nonexpansive");
  if (!is_isometric(task.i)) return std::string("i is not isometric");
  if (!is_isometric(task.j)) return std::string("j is not isometric");
  return std::nullopt;
}

Chain step_chain(Chain c, const Task& task, std::optional<std::size_t> cap) {
  if (c.stages.empty()) throw PreconditionError("step_chain: empty chain");
  const std::size_t dim_cap = cap.value_or(c.dim_cap);
  LogEntry entry;
  entry.label = task.label;
  entry.k = task.k;
  if (auto why = star_failure(c, task)) {
    entry.note = "(*) fails: " + *why;
    append_repeat(c, std::move(entry));
    return c;
  }
  const std::size_t n = c.size();
  const std::size_t k = task.k;
  const ChainStage& prev = c.top();
  const ChainStage& sk = c.stages[k];
  const std::size_t a = prev.u.dim() + task.t.domain().dim() - sk.u.dim();
  const std::size_t b = prev.v.dim() + task.t.codomain().dim() - sk.v.dim();
  if (a > dim_cap || b > dim_cap) {
    entry.note = "skipped: dimension cap " + std::to_string(dim_cap) + " exceeded (" + std::to_string(a) + ", " +
                 std::to_string(b) + ")";
    append_repeat(c, std::move(entry));
    return c;
  }

  const LinMap ku = inclusion_u(c, k, n - 1);
  const LinMap kv = inclusion_v(c, k, n - 1);
  const PushoutResult pu = pushout(ku, task.i, dim_cap);
  const PushoutResult pv = pushout(kv, task.j, dim_cap);
  if (!(pu.g.matrix() == QMat::embedding(a, prev.u.dim())) || !(pv.g.matrix() == QMat::embedding(b, prev.v.dim()))) {
    throw std::logic_error("step_chain: previous stage is not a coordinate prefix");
  }
  const LinMap& i_prime = pu.j;
  const LinMap& j_prime = pv.j;
  LinMap f = induced_map(pu, ku, task.i, compose(pv.g, prev.f), compose(j_prime, task.t));

  if (!(f.matrix() * pu.g.matrix() == pv.g.matrix() * prev.f.matrix())) {
    throw std::logic_error("step_chain: F_n does not extend F_(n-1)");
  }
  if (!(f.matrix() * i_prime.matrix() == j_prime.matrix() * task.t.matrix())) {
    throw std::logic_error("step_chain: F_n o i' != j' o T");
  }
  if (!(i_prime.matrix() * task.i.matrix() == QMat::embedding(a, sk.u.dim())) ||
      !(j_prime.matrix() * task.j.matrix() == QMat::embedding(b, sk.v.dim()))) {
    throw std::logic_error("step_chain: retraction identities fail");
  }
  if (operator_norm(f) > 1) throw std::logic_error("step_chain: F_n is not nonexpansive");

  entry.realized = true;
  entry.note = "(*) holds";
  entry.task = task;
  entry.i_prime = i_prime.matrix();
  entry.j_prime = j_prime.matrix();
  ChainStage s{pu.w, pv.w, std::move(f), pu.g, pv.g};
  c.stages.push_back(std::move(s));
  entry.stage = c.stages.size() - 1;
  c.log.push_back(std::move(entry));
  return c;
}

Chain build_chain(const ChainParams& params) {
  Chain c = zero_chain(params.dim_cap, params.seed);
  for (std::size_t p = 0; p < params.stages; ++p) {
    Task t = task_at(c, p);
    c = step_chain(std::move(c), t);
  }
  return c;
}

Report verify_chain(const Chain& c) {
  Report r;
  if (c.stages.empty()) {
    r.holds("stage 0", "the chain has a stage 0", false);
    return r;
  }
  const ChainStage& s0 = c.stages[0];
  r.holds("stage 0", "U_0 = 0, V_0 = 0, F_0 = 0", s0.u.dim() == 0 && s0.v.dim() == 0);
  for (std::size_t n = 1; n < c.size(); ++n) {
    const ChainStage& s = c.stages[n];
    const ChainStage& p = c.stages[n - 1];
    const std::string tag = "stage " + std::to_string(n) + ": ";
    r.le(tag + "nonexpansive", "||F_n|| <= 1", operator_norm(s.f), Rat(1));
    r.holds(tag + "(a) prefix", "U_(n-1), V_(n-1) are coordinate prefixes of U_n, V_n",
            s.incl_u.matrix() == QMat::embedding(s.u.dim(), p.u.dim()) &&
                s.incl_v.matrix() == QMat::embedding(s.v.dim(), p.v.dim()) && s.incl_u.domain() == p.u &&
                s.incl_v.domain() == p.v);
    r.holds(tag + "(a) inclusions isometric", "U_(n-1) <= U_n and V_(n-1) <= V_n isometric",
            is_isometric(s.incl_u) && is_isometric(s.incl_v));
    r.holds(tag + "(b) extension", "F_n o inclU = inclV o F_(n-1)",
            s.f.matrix() * s.incl_u.matrix() == s.incl_v.matrix() * p.f.matrix());
  }
  for (const LogEntry& e : c.log) {
    if (!e.realized) continue;
    const std::string tag = "step " + std::to_string(e.stage) + " (" + e.label + "): ";
    if (!e.task || !e.i_prime || !e.j_prime || e.stage >= c.size()) {
      r.holds(tag + "(c) record", "realized step keeps its task and witnesses", false);
      continue;
    }
    const Task& t = *e.task;
    const ChainStage& m = c.stages[e.stage];
    const ChainStage& sk = c.stages.at(t.k);
    const LinMap ip(*e.i_prime, t.t.domain(), m.u);
    const LinMap jp(*e.j_prime, t.t.codomain(), m.v);
    r.holds(tag + "(c) commutation", "j' o T = F_m o i'", jp.matrix() * t.t.matrix() == m.f.matrix() * ip.matrix());
    r.holds(tag + "(c) retraction U", "i' o i = identity on U_k",
            ip.matrix() * t.i.matrix() == QMat::embedding(m.u.dim(), sk.u.dim()));
    r.holds(tag + "(c) retraction V", "j' o j = identity on V_k",
            jp.matrix() * t.j.matrix() == QMat::embedding(m.v.dim(), sk.v.dim()));
    r.holds(tag + "(c) embeddings", "i', j' isometric", is_isometric(ip) && is_isometric(jp));
  }
  return r;
}

}  // namespace gurarii
