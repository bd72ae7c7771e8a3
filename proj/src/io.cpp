#include "gurarii/io.hpp"

#include <fstream>
#include <sstream>

#include "gurarii/errors.hpp"

namespace gurarii::io {

namespace {

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t i) { return where + "/" + std::to_string(i); }

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing \"" + key + "\"");
  return *it;
}

std::size_t count_from_json(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    fail(where, "expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

std::vector<QVec> vecs_from_json(const Json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a list of vectors");
  std::vector<QVec> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vec_from_json(j[i], dim, at(where, i)));
  return out;
}

Json vecs_to_json(const std::vector<QVec>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

// A space given inline or as a reference into the tables.
Space space_ref(const Json& j, const std::map<std::string, Space>& table,
                const std::map<std::string, Space>& extra, const std::string& where) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (auto it = table.find(name); it != table.end()) return it->second;
    if (auto it = extra.find(name); it != extra.end()) return it->second;
    fail(where, "unknown space reference \"" + name + "\"");
  }
  return space_from_json(j, where);
}

Json space_ref_json(const Space& s, const std::map<std::string, Space>& table,
                    const std::map<std::string, Space>& extra) {
  for (const auto* t : {&table, &extra}) {
    for (const auto& [name, sp] : *t) {
      if (sp == s) return name;
    }
  }
  return to_json(s);
}

Json map_json(const QMat& m) { return to_json(m); }

}  // namespace

Json to_json(const Rat& r) { return to_string(r); }

Json to_json(const QVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

Json to_json(const QMat& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const Ball& b) {
  Json out{{"dim", b.dim}};
  if (b.vrep) out["vrep"] = vecs_to_json(*b.vrep);
  if (b.hrep) out["hrep"] = vecs_to_json(*b.hrep);
  return out;
}

Json to_json(const Space& s) { return Json{{"dim", s.dim()}, {"ball", to_json(s.ball())}}; }

Json to_json(const Report& r) {
  Json checks = Json::array();
  for (const Check& c : r.checks()) {
    checks.push_back(Json{{"name", c.name},
                          {"bound", c.bound},
                          {"claimed", c.claimed},
                          {"computed", c.computed},
                          {"verdict", c.pass ? "pass" : "fail"}});
  }
  return Json{{"pass", r.pass()}, {"checks", std::move(checks)}, {"notes", r.notes()}};
}

Json to_json(const OperatorSquare& s) {
  return Json{{"S", map_json(s.s.matrix())},
              {"T", map_json(s.t.matrix())},
              {"i0", map_json(s.i0.matrix())},
              {"i1", map_json(s.i1.matrix())},
              {"eps", to_json(s.eps)},
              {"defect", to_json(s.defect)},
              {"from_stage", s.from_stage},
              {"to_stage", s.to_stage}};
}

Json to_json(const Chain& c) {
  Json stages = Json::array();
  for (std::size_t n = 0; n < c.size(); ++n) {
    const ChainStage& st = c.stages[n];
    Json rec{{"U", to_json(st.u.ball())}, {"V", to_json(st.v.ball())}, {"F", to_json(st.f.matrix())}};
    if (n > 0 && n - 1 < c.log.size()) {
      const LogEntry& e = c.log[n - 1];
      Json log{{"label", e.label}, {"k", e.k}, {"realized", e.realized}, {"note", e.note}};
      if (e.task) {
        const Task& t = *e.task;
        log["task"] = Json{{"X", to_json(t.t.domain())},
                           {"Y", to_json(t.t.codomain())},
                           {"X0", to_json(t.i.domain())},
                           {"Y0", to_json(t.j.domain())},
                           {"T", to_json(t.t.matrix())},
                           {"i", to_json(t.i.matrix())},
                           {"j", to_json(t.j.matrix())},
                           {"k", t.k},
                           {"label", t.label}};
      }
      if (e.i_prime) log["i_prime"] = to_json(*e.i_prime);
      if (e.j_prime) log["j_prime"] = to_json(*e.j_prime);
      rec["log"] = std::move(log);
    }
    stages.push_back(std::move(rec));
  }
  return Json{{"dim_cap", c.dim_cap}, {"seed", c.seed}, {"stages", std::move(stages)}};
}

// ---------------------------------------------------------------------------

Rat rat_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_rat(j.get<std::string>());
    } catch (const ParseError& e) {
      fail(where, e.what());
    }
  }
  if (j.is_number_integer()) return Rat(j.get<long>());
  fail(where, "expected a rational \"p/q\"");
}

QVec vec_from_json(const Json& j, std::size_t dim, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a vector");
  if (j.size() != dim) {
    throw DimensionError(where + ": vector has " + std::to_string(j.size()) + " entries, expected " +
                         std::to_string(dim));
  }
  QVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rat_from_json(j[i], at(where, i)));
  return v;
}

QMat mat_from_json(const Json& j, std::size_t rows, std::size_t cols, const std::string& where) {
  if (!j.is_array()) fail(where, "expected a list of rows");
  if (j.size() != rows) {
    throw DimensionError(where + ": matrix has " + std::to_string(j.size()) + " rows, expected " +
                         std::to_string(rows));
  }
  QMat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const QVec row = vec_from_json(j[i], cols, at(where, i));
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = row[k];
  }
  return m;
}

Ball ball_from_json(const Json& j, const std::string& where) {
  Ball b;
  b.dim = count_from_json(field(j, "dim", where), at(where, "dim"));
  if (j.contains("vrep")) b.vrep = vecs_from_json(j["vrep"], b.dim, at(where, "vrep"));
  if (j.contains("hrep")) b.hrep = vecs_from_json(j["hrep"], b.dim, at(where, "hrep"));
  return b;
}

Space space_from_json(const Json& j, const std::string& where, std::size_t dim_cap) {
  const std::size_t dim = count_from_json(field(j, "dim", where), at(where, "dim"));
  const Ball b = ball_from_json(field(j, "ball", where), at(where, "ball"));
  if (b.dim != dim) {
    throw DimensionError(where + ": space dim " + std::to_string(dim) + " but ball dim " + std::to_string(b.dim));
  }
  if (dim == 0) return Space();
  return Space(b, dim_cap);
}

// ---------------------------------------------------------------------------

const LinMap& Instance::map(const std::string& name) const {
  auto it = maps.find(name);
  if (it == maps.end()) throw PreconditionError("instance has no map \"" + name + "\"");
  return it->second;
}

const Space& Instance::space(const std::string& name) const {
  auto it = spaces.find(name);
  if (it == spaces.end()) throw PreconditionError("instance has no space \"" + name + "\"");
  return it->second;
}

Instance instance_from_json(const Json& j, const std::map<std::string, Space>& extra) {
  if (!j.is_object()) fail("", "expected an object");
  Instance inst;
  if (j.contains("spaces")) {
    const Json& s = j["spaces"];
    if (!s.is_object()) fail("/spaces", "expected an object of named spaces");
    for (const auto& [name, v] : s.items()) inst.spaces.emplace(name, space_from_json(v, "/spaces/" + name));
  }
  if (j.contains("maps")) {
    const Json& m = j["maps"];
    if (!m.is_object()) fail("/maps", "expected an object of named maps");
    for (const auto& [name, v] : m.items()) {
      const std::string w = "/maps/" + name;
      Space dom = space_ref(field(v, "domain", w), inst.spaces, extra, at(w, "domain"));
      Space cod = space_ref(field(v, "codomain", w), inst.spaces, extra, at(w, "codomain"));
      QMat mat = mat_from_json(field(v, "matrix", w), cod.dim(), dom.dim(), at(w, "matrix"));
      inst.maps.emplace(name, LinMap(std::move(mat), std::move(dom), std::move(cod)));
    }
  }
  for (const auto& [key, v] : j.items()) {
    if (key != "spaces" && key != "maps") fail("/" + key, "unknown key");
  }
  return inst;
}

Json to_json(const Instance& inst, const std::map<std::string, Space>& extra) {
  Json spaces = Json::object();
  for (const auto& [name, s] : inst.spaces) spaces[name] = to_json(s);
  Json maps = Json::object();
  for (const auto& [name, m] : inst.maps) {
    maps[name] = Json{{"matrix", to_json(m.matrix())},
                      {"domain", space_ref_json(m.domain(), inst.spaces, extra)},
                      {"codomain", space_ref_json(m.codomain(), inst.spaces, extra)}};
  }
  return Json{{"spaces", std::move(spaces)}, {"maps", std::move(maps)}};
}

Chain chain_from_json(const Json& j) {
  Chain c;
  c.dim_cap = count_from_json(field(j, "dim_cap", ""), "/dim_cap");
  const Json& seed = field(j, "seed", "");
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) fail("/seed", "expected an integer");
  c.seed = seed.get<std::uint64_t>();
  const Json& stages = field(j, "stages", "");
  if (!stages.is_array() || stages.empty()) fail("/stages", "expected a nonempty list of stages");
  for (std::size_t n = 0; n < stages.size(); ++n) {
    const std::string w = at("/stages", n);
    const Json& rec = stages[n];
    auto side = [&](const char* key) {
      const Ball b = ball_from_json(field(rec, key, w), at(w, key));
      return b.dim == 0 ? Space() : Space(b, c.dim_cap);
    };
    Space u = side("U");
    Space v = side("V");
    QMat f = mat_from_json(field(rec, "F", w), v.dim(), u.dim(), at(w, "F"));
    LinMap fm(std::move(f), u, v);
    if (n == 0) {
      c.stages.push_back(ChainStage{u, v, fm, LinMap::identity(u), LinMap::identity(v)});
      continue;
    }
    const ChainStage& prev = c.stages.back();
    if (prev.u.dim() > u.dim() || prev.v.dim() > v.dim()) fail(w, "stage is smaller than its predecessor");
    LinMap iu(QMat::embedding(u.dim(), prev.u.dim()), prev.u, u);
    LinMap iv(QMat::embedding(v.dim(), prev.v.dim()), prev.v, v);
    c.stages.push_back(ChainStage{u, v, fm, std::move(iu), std::move(iv)});

    const std::string lw = at(w, "log");
    const Json& lj = field(rec, "log", w);
    LogEntry e;
    e.stage = n;
    e.label = field(lj, "label", lw).get<std::string>();
    e.k = count_from_json(field(lj, "k", lw), at(lw, "k"));
    e.realized = field(lj, "realized", lw).get<bool>();
    e.note = field(lj, "note", lw).get<std::string>();
    if (lj.contains("task")) {
      const std::string tw = at(lw, "task");
      const Json& tj = lj["task"];
      Space x = space_from_json(field(tj, "X", tw), at(tw, "X"));
      Space y = space_from_json(field(tj, "Y", tw), at(tw, "Y"));
      Space x0 = space_from_json(field(tj, "X0", tw), at(tw, "X0"));
      Space y0 = space_from_json(field(tj, "Y0", tw), at(tw, "Y0"));
      LinMap t(mat_from_json(field(tj, "T", tw), y.dim(), x.dim(), at(tw, "T")), x, y);
      LinMap i(mat_from_json(field(tj, "i", tw), x.dim(), x0.dim(), at(tw, "i")), x0, x);
      LinMap jm(mat_from_json(field(tj, "j", tw), y.dim(), y0.dim(), at(tw, "j")), y0, y);
      e.task = Task{std::move(t), std::move(i), std::move(jm), count_from_json(field(tj, "k", tw), at(tw, "k")),
                    field(tj, "label", tw).get<std::string>()};
      if (lj.contains("i_prime")) e.i_prime = mat_from_json(lj["i_prime"], u.dim(), x.dim(), at(lw, "i_prime"));
      if (lj.contains("j_prime")) e.j_prime = mat_from_json(lj["j_prime"], v.dim(), y.dim(), at(lw, "j_prime"));
    }
    c.log.push_back(std::move(e));
  }
  return c;
}

// ---------------------------------------------------------------------------

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(source + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << dump(j);
}

}  // namespace gurarii::io
