// Command line front end: reads instance files, runs one construction and
// writes the result file and a JSON report of every exact check.
//
// Exit status: 0 when every check passes, 1 when some check fails, 2 on
// input or precondition errors.

#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "gurarii/amalgam.hpp"
#include "gurarii/errors.hpp"
#include "gurarii/fraisse.hpp"
#include "gurarii/io.hpp"
#include "gurarii/polytope.hpp"
#include "gurarii/rationalize.hpp"

using namespace gurarii;
using io::Json;

namespace {

struct Options {
  std::string input;
  std::string out;
  std::string report;
  std::string chain;
  std::string map;
  std::string vector;
  std::string eps = "1/2";
  std::string delta = "1/4";
  std::size_t stages = 20;
  std::size_t dim_cap = 6;
  // Two chains and their pushouts must fit the witness cap together.
  std::size_t bnf_stages = 12;
  std::size_t bnf_dim_cap = 4;
  std::size_t depth = 4;
  std::uint64_t seed = 1;
  long stage = -1;
  bool two_sided = false;
};

struct Outcome {
  Report report;
  Json extra = Json::object();
  Json result;  // written to --out when set
};

Rat flag_rat(const std::string& text, const char* flag) {
  try {
    return parse_rat(text);
  } catch (const ParseError& e) {
    throw ParseError(std::string(flag) + ": " + e.what());
  }
}

Chain load_chain(const Options& o) {
  if (!o.chain.empty()) return io::chain_from_json(io::read_file(o.chain));
  return build_chain({o.stages, o.dim_cap, o.seed});
}

std::size_t pick_stage(const Options& o, const Chain& c) {
  if (o.stage < 0) return c.size() - 1;
  if (static_cast<std::size_t>(o.stage) >= c.size()) {
    throw PreconditionError("--stage " + std::to_string(o.stage) + " is not built (chain has " +
                            std::to_string(c.size()) + " stages)");
  }
  return static_cast<std::size_t>(o.stage);
}

std::map<std::string, Space> stage_refs(const Chain& c, std::size_t n) {
  return {{"@U", c.stages[n].u}, {"@V", c.stages[n].v}};
}

io::Instance load_instance(const Options& o, const std::map<std::string, Space>& extra = {}) {
  if (o.input.empty()) throw PreconditionError("an input instance file is required");
  return io::instance_from_json(io::read_file(o.input), extra);
}

Json maps_json(std::initializer_list<std::pair<const char*, const LinMap*>> maps) {
  Json out = Json::object();
  for (const auto& [name, m] : maps) out[name] = io::to_json(m->matrix());
  return out;
}

// ---------------------------------------------------------------------------

Outcome space_check(const Options& o) {
  const io::Instance inst = load_instance(o);
  Outcome out;
  Json spaces = Json::object();
  for (const auto& [name, s] : inst.spaces) {
    for (std::size_t k = 0; k < s.vertices().size(); ++k) {
      out.report.eq(name + ": vertex " + std::to_string(k), "||v|| = 1 on every vertex", norm_eval(s, s.vertices()[k]),
                    Rat(1));
    }
    for (std::size_t k = 0; k < s.facets().size(); ++k) {
      out.report.eq(name + ": facet " + std::to_string(k), "||phi||* = 1 on every facet",
                    dual_norm_eval(s, s.facets()[k]), Rat(1));
    }
    spaces[name] = Json{{"dim", s.dim()}, {"vertices", s.vertices().size()}, {"facets", s.facets().size()}};
  }
  Json maps = Json::object();
  for (const auto& [name, m] : inst.maps) maps[name] = Json{{"norm", io::to_json(operator_norm(m))}};
  out.extra["spaces"] = std::move(spaces);
  out.extra["maps"] = std::move(maps);
  return out;
}

Outcome op_norm(const Options& o) {
  const io::Instance inst = load_instance(o);
  Outcome out;
  Json maps = Json::object();
  for (const auto& [name, m] : inst.maps) {
    if (!o.map.empty() && name != o.map) continue;
    const Rat n = operator_norm(m);
    // The norm is attained at a vertex of the domain ball.
    Rat best = 0;
    for (const auto& v : m.domain().vertices()) best = std::max(best, norm_eval(m.codomain(), m.apply(v)));
    out.report.eq(name + ": attained", "||T|| = max ||T v|| over vertices v", best, n);
    const LowerBound lb = lower_isometry_bound(m);
    if (m.domain().dim() > 0 && !lb.witness.empty()) {
      out.report.eq(name + ": lower bound witness", "||x|| = 1 and ||T x|| = lower bound",
                    norm_eval(m.codomain(), m.apply(lb.witness)), lb.value);
    }
    maps[name] = Json{{"norm", io::to_json(n)}, {"lower", io::to_json(lb.value)}, {"isometric", is_isometric(m)}};
    if (!o.map.empty() || inst.maps.size() == 1) out.extra["norm"] = io::to_json(n);
  }
  if (!o.map.empty() && maps.empty()) throw PreconditionError("instance has no map \"" + o.map + "\"");
  out.extra["maps"] = std::move(maps);
  return out;
}

Outcome amalgam_pushout(const Options& o) {
  const io::Instance inst = load_instance(o);
  const LinMap& i = inst.map("i");
  const LinMap& f = inst.map("f");
  const PushoutResult p = pushout(i, f);
  Outcome out;
  Report& r = out.report;
  r.eq("square", "||g o i - j o f|| = 0", map_distance(compose(p.g, i), compose(p.j, f)), Rat(0));
  r.le("g nonexpansive", "||g|| <= 1", operator_norm(p.g), Rat(1));
  r.le("j nonexpansive", "||j|| <= 1", operator_norm(p.j), Rat(1));
  if (is_isometric(i)) r.holds("j isometric", "i isometric => j isometric", is_isometric(p.j));
  if (is_isometric(f)) r.holds("g isometric", "f isometric => g isometric", is_isometric(p.g));
  std::vector<QVec> images;
  for (const auto& v : i.codomain().vertices()) images.push_back(p.g.apply(v));
  for (const auto& v : f.codomain().vertices()) images.push_back(p.j.apply(v));
  const Ball hull = complete_representations(Ball{p.w.dim(), std::move(images), std::nullopt});
  r.holds("hull", "ball W = conv(g ball X, j ball Y)", *hull.vrep == p.w.vertices());
  out.extra["maps"] = maps_json({{"g", &p.g}, {"j", &p.j}});
  out.result = io::to_json(p.w.ball());
  return out;
}

Outcome amalgam_correct(const Options& o) {
  const io::Instance inst = load_instance(o);
  const LinMap& f = inst.map("f");
  const Rat eps = flag_rat(o.eps, "--eps");
  const CorrectionResult c =
      correction_sum(f, eps, o.two_sided ? Convention::kTwoSided : Convention::kNonexpansive);
  Outcome out;
  Report& r = out.report;
  r.holds("iX isometric", "iX isometric", is_isometric(c.ix));
  r.holds("jY isometric", "jY isometric", is_isometric(c.jy));
  r.le("eps-commutes", "||iX - jY o f|| <= eps", map_distance(c.ix, compose(c.jy, f)), eps);
  out.extra["maps"] = maps_json({{"iX", &c.ix}, {"jY", &c.jy}});
  out.result = io::to_json(c.z0.ball());
  return out;
}

Outcome square_sum_cmd(const Options& o) {
  const io::Instance inst = load_instance(o);
  const LinMap &t0 = inst.map("t0"), &t1 = inst.map("t1"), &f0 = inst.map("f0"), &f1 = inst.map("f1");
  const Rat eps = flag_rat(o.eps, "--eps"), delta = flag_rat(o.delta, "--delta");
  const SquareSumResult s = square_sum(t0, t1, f0, f1, eps, delta);
  Outcome out;
  Report& r = out.report;
  r.le("nonexpansive", "||T0 (+) T1|| <= 1", operator_norm(s.map), Rat(1));
  r.eq("(*) first leg", "||(T0 (+) T1) o iX0 - iX1 o T0|| = 0",
       map_distance(compose(s.map, s.source.ix), compose(s.target.ix, t0)), Rat(0));
  r.eq("(*) second leg", "||(T0 (+) T1) o jY0 - jY1 o T1|| = 0",
       map_distance(compose(s.map, s.source.jy), compose(s.target.jy, t1)), Rat(0));
  io::Instance res;
  res.spaces.emplace("source", s.source.z0);
  res.spaces.emplace("target", s.target.z0);
  res.maps.emplace("T", s.map);
  out.result = io::to_json(res);
  return out;
}

Outcome repair(const Options& o) {
  const io::Instance inst = load_instance(o);
  const Rat delta = flag_rat(o.delta, "--delta");
  Outcome out;
  Report& r = out.report;
  io::Instance res;
  auto check_norm = [&](const std::string& tag, const NormRepair& n, const Rat& e) {
    r.holds(tag + ": equivalence", "(1+e)^-1 ||x|| <= ||x||' <= (1+e) ||x||", delta_equivalent(n.original, n.repaired, e));
    r.holds(tag + ": pinned", "the subspace stays isometric", is_isometric(n.pinned));
  };
  if (inst.has_map("t")) {
    const LinMap &t = inst.map("t"), &i0 = inst.map("i0"), &j0 = inst.map("j0");
    const OperatorRepair rep = repair_operator(t, i0, j0, delta);
    const Rat e = (1 + delta) * (1 + delta) - 1;
    r.le("nonexpansive", "||T'|| <= 1", operator_norm(rep.t), Rat(1));
    check_norm("domain", rep.x, e);
    check_norm("codomain", rep.y, e);
    r.note(rep.rescaled ? "domain rescaled by (1+delta)^2" : "already nonexpansive, norms kept");
    res.spaces.emplace("X", rep.x.repaired);
    res.spaces.emplace("Y", rep.y.repaired);
    res.maps.emplace("t", rep.t);
  } else {
    const LinMap& incl = inst.map("incl");
    const NormRepair rep = repair_norm(incl.codomain(), incl, delta);
    check_norm("space", rep, delta);
    res.spaces.emplace("Y", rep.repaired);
    res.spaces.emplace("X", incl.domain());
    res.maps.emplace("incl", rep.pinned);
  }
  out.result = io::to_json(res);
  return out;
}

Outcome chain_build(const Options& o) {
  const Chain c = build_chain({o.stages, o.dim_cap, o.seed});
  Outcome out;
  out.report = verify_chain(c);
  std::size_t realized = 0;
  for (const auto& e : c.log) realized += e.realized ? 1 : 0;
  out.extra["stages"] = c.size();
  out.extra["realized"] = realized;
  out.result = io::to_json(c);
  return out;
}

Outcome g_witness_cmd(const Options& o) {
  const Chain c = load_chain(o);
  const std::size_t n = pick_stage(o, c);
  const ChainStage& st = c.stages[n];
  const io::Instance inst = load_instance(o, stage_refs(c, n));
  const LinMap &t = inst.map("t"), &x0 = inst.map("x0"), &y0 = inst.map("y0");
  const Rat eps = flag_rat(o.eps, "--eps");
  const auto s = solve_linear(y0.matrix(), t.matrix() * x0.matrix());
  if (!s) throw PreconditionError("T(X0) is not inside Y0");
  const LinMap smap(*s, x0.domain(), y0.domain());
  const LinMap i = inst.has_map("i") ? inst.map("i") : LinMap::zero(x0.domain(), st.u);
  const LinMap j = inst.has_map("j") ? inst.map("j") : LinMap::zero(y0.domain(), st.v);
  OperatorSquare seed = make_square(smap, st.f, i, j);
  seed.from_stage = seed.to_stage = n;
  const GWitness w = g_witness(c, t, x0, y0, seed, n, eps);
  Outcome out;
  out.report = verify_g_witness(w, t, x0, y0, seed, n, eps);
  for (const auto& s : w.steps) out.report.note(s);
  out.extra["m"] = w.m;
  out.result = Json{{"m", w.m},
                    {"i_prime", io::to_json(w.i_prime.matrix())},
                    {"j_prime", io::to_json(w.j_prime.matrix())},
                    {"delta", io::to_json(w.delta)},
                    {"x_distance", io::to_json(w.x_distance)},
                    {"y_distance", io::to_json(w.y_distance)},
                    {"chain", io::to_json(w.chain)}};
  return out;
}

Json schedule_json(const EpsSchedule& s) {
  return Json{{"eps0", io::to_json(s.eps0)}, {"offset", s.offset}};
}

Outcome embed(const Options& o) {
  const Chain c = load_chain(o);
  const io::Instance inst = load_instance(o);
  const EmbedTranscript tr = embed_operator(c, inst.map("t"), EpsSchedule::dyadic(), o.depth);
  Outcome out;
  out.report = verify_embedding(tr);
  Json squares = Json::array();
  for (const auto& s : tr.squares) squares.push_back(io::to_json(s));
  out.result = Json{{"schedule", schedule_json(tr.schedule)}, {"squares", std::move(squares)}};
  return out;
}

Outcome bnf(const Options& o) {
  const Chain a = build_chain({o.bnf_stages, o.bnf_dim_cap, o.seed});
  const Chain b = build_chain({o.bnf_stages, o.bnf_dim_cap, o.seed + 1});
  const Space z;
  OperatorSquare seed = make_square(a.stages[0].f, b.stages[0].f, LinMap::identity(z), LinMap::identity(z));
  const Rat eps = flag_rat(o.eps, "--eps");
  const BnfTranscript tr = back_and_forth(a, b, seed, eps, o.depth);
  Outcome out;
  out.report = verify_bnf(tr);
  Json ks = Json::array(), ls = Json::array(), etas = Json::array();
  for (const auto& s : tr.k_squares) ks.push_back(io::to_json(s));
  for (const auto& s : tr.l_squares) ls.push_back(io::to_json(s));
  for (const auto& e : tr.etas) etas.push_back(io::to_json(e));
  out.extra["etas"] = etas;
  out.result = Json{{"schedule", schedule_json(tr.schedule)},
                    {"eps", io::to_json(tr.eps)},
                    {"k", std::move(ks)},
                    {"l", std::move(ls)},
                    {"etas", std::move(etas)}};
  return out;
}

Outcome kernel(const Options& o) {
  const Chain c = load_chain(o);
  const std::size_t n = pick_stage(o, c);
  const io::Instance inst = load_instance(o, stage_refs(c, n));
  const LinMap& x0 = inst.map("x0");
  const LinMap i = inst.has_map("i") ? inst.map("i") : LinMap::zero(x0.domain(), c.stages[n].u);
  const Rat eps = flag_rat(o.eps, "--eps");
  const SpaceWitness w = kernel_witness(c, x0, i, n, eps);
  Outcome out;
  Report& r = out.report;
  const ChainStage& sm = w.chain.stages[w.m];
  r.holds("kernel", "F_m o i' = 0", (sm.f.matrix() * w.f.matrix()).is_zero());
  r.holds("embedding", "i' is an eps-embedding", classify_embedding(w.f, eps).at_least_eps());
  r.le("extends i", "||i' restricted to X0 - i|| <= eps", w.distance, eps);
  out.extra["m"] = w.m;
  out.result = Json{{"m", w.m}, {"i_prime", io::to_json(w.f.matrix())}, {"distance", io::to_json(w.distance)}};
  return out;
}

QVec parse_vector(const std::string& text, std::size_t dim) {
  QVec v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(flag_rat(item, "--vector"));
  if (v.size() != dim) {
    throw DimensionError("--vector has " + std::to_string(v.size()) + " entries, V_n has dim " + std::to_string(dim));
  }
  return v;
}

Outcome surject(const Options& o) {
  const Chain c = load_chain(o);
  const std::size_t n = pick_stage(o, c);
  const std::size_t dim = c.stages[n].v.dim();
  QVec v;
  if (!o.vector.empty()) {
    v = parse_vector(o.vector, dim);
  } else {
    if (dim == 0) throw PreconditionError("V_n = 0 has no nonzero vector");
    std::mt19937_64 eng(o.seed);
    v = zero_vec(dim);
    while (is_zero(v)) {
      for (auto& x : v) {
        x = Rat(static_cast<long>(eng() % 7) - 3, static_cast<long>(eng() % 3) + 1);
        x.canonicalize();
      }
    }
  }
  const SurjectivityWitness w = surjectivity_witness(c, v, n);
  const ChainStage& sm = w.chain.stages[w.m];
  QVec padded = v;
  padded.resize(sm.v.dim(), Rat(0));
  Outcome out;
  out.report.holds("preimage", "F_m u = v", sm.f.matrix() * w.u == padded);
  out.extra["m"] = w.m;
  out.result = Json{{"m", w.m}, {"v", io::to_json(v)}, {"u", io::to_json(w.u)}};
  return out;
}

void emit(const Options& o, const std::string& verb, const Outcome& out) {
  Json rep = io::to_json(out.report);
  for (const auto& [k, v] : out.extra.items()) rep[k] = v;
  rep["verb"] = verb;
  if (!o.out.empty() && !out.result.is_null()) io::write_file(o.out, out.result);
  if (o.report.empty()) std::cout << io::dump(rep);
  else io::write_file(o.report, rep);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact constructions and checks for polyhedral operators and the universal operator chain"};
  app.require_subcommand(1);
  Options o;

  using Runner = Outcome (*)(const Options&);
  struct Verb {
    const char* name;
    const char* help;
    Runner run;
    bool input, eps, delta, chain, depth;
  };
  const std::vector<Verb> verbs{
      {"space-check", "check both ball representations of every space", space_check, true, false, false, false, false},
      {"op-norm", "operator norms and isometry bounds", op_norm, true, false, false, false, false},
      {"amalgam-pushout", "pushout of maps i and f", amalgam_pushout, true, false, false, false, false},
      {"amalgam-correct", "correction sum of map f", amalgam_correct, true, true, false, false, false},
      {"square-sum", "block operator between correction sums", square_sum_cmd, true, true, true, false, false},
      {"repair", "rational repair of an operator or of a norm", repair, true, false, true, false, false},
      {"chain-build", "build and verify a chain prefix", chain_build, false, false, false, true, false},
      {"g-witness", "(G*) witness against a chain", g_witness_cmd, true, true, false, true, false},
      {"embed", "universality transcript of an operator", embed, true, false, false, true, true},
      {"bnf", "back-and-forth transcript between two chains", bnf, false, true, false, true, true},
      {"kernel", "kernel witness against a chain", kernel, true, true, false, true, false},
      {"surject", "surjectivity witness against a chain", surject, false, false, false, true, false},
  };
  std::map<std::string, Runner> runners;
  for (const Verb& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    runners[v.name] = v.run;
    if (v.input) sub->add_option("input", o.input, "instance file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "result file");
    sub->add_option("--report", o.report, "report file (default: stdout)");
    if (v.eps) sub->add_option("--eps", o.eps, "rational p/q")->capture_default_str();
    if (v.delta) sub->add_option("--delta", o.delta, "rational p/q")->capture_default_str();
    const bool two_chains = std::string(v.name) == "bnf";
    if (v.chain) {
      sub->add_option("--stages", two_chains ? o.bnf_stages : o.stages, "chain stages")->capture_default_str();
      sub->add_option("--dim-cap", two_chains ? o.bnf_dim_cap : o.dim_cap, "chain dimension cap")
          ->capture_default_str();
      sub->add_option("--seed", o.seed, two_chains ? "seed of the first chain, the second uses seed + 1" : "chain seed")->capture_default_str();
    }
    if (v.depth) sub->add_option("--depth", o.depth, "transcript depth")->capture_default_str();
    const std::string name = v.name;
    if (name == "g-witness" || name == "kernel" || name == "surject") {
      sub->add_option("--chain", o.chain, "chain file instead of building one")->check(CLI::ExistingFile);
      sub->add_option("--stage", o.stage, "stage index (default: last)");
    }
    if (name == "embed") sub->add_option("--chain", o.chain, "chain file")->check(CLI::ExistingFile);
    if (name == "op-norm") sub->add_option("--map", o.map, "only this map");
    if (name == "surject") sub->add_option("--vector", o.vector, "comma separated rationals (default: seeded)");
    if (name == "amalgam-correct") sub->add_flag("--two-sided", o.two_sided, "allow ||f|| <= 1 + eps");
  }
  CLI11_PARSE(app, argc, argv);

  const std::string verb = app.get_subcommands().front()->get_name();
  try {
    const Outcome out = runners.at(verb)(o);
    emit(o, verb, out);
    return out.report.pass() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << verb << ": " << e.what() << "\n";
    Json rep{{"verb", verb}, {"pass", false}, {"error", e.what()}, {"checks", Json::array()}};
    if (o.report.empty()) std::cout << io::dump(rep);
    else io::write_file(o.report, rep);
    return 2;
  }
}
