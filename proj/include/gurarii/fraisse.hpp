#pragma once

// Finite prefixes of the chain F_0 <= F_1 <= ... whose completion is the
// universal operator, and the witness procedures run against such prefixes:
// (G*) witnesses, space/kernel/surjectivity witnesses, the universality
// embedding of an operator and back-and-forth transcripts between chains.
//
// Stage n acts from U_n = Q^a_n to V_n = Q^b_n and stage n-1 sits in stage n
// as the first coordinates on both sides.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gurarii/banach.hpp"
#include "gurarii/report.hpp"

namespace gurarii {

/// A square S -> T of operators: i0 o ... on the domain side and i1 on the
/// codomain side, S: X -> Y, T: Z -> W, i0: X -> Z, i1: Y -> W.
struct OperatorSquare {
  LinMap s;
  LinMap t;
  LinMap i0;
  LinMap i1;
  Rat eps;     // least e such that this is an e-embedding of operators
  Rat defect;  // ||T o i0 - i1 o S||
  std::size_t from_stage = 0;  // stage indices, when S or T is a chain stage
  std::size_t to_stage = 0;

  /// Isometric legs and zero defect.
  bool is_embedding() const;
};

/// Computes defect and eps. Throws PreconditionError when a leg is not an
/// e-embedding for any e (expansive or not injective).
OperatorSquare make_square(LinMap s, LinMap t, LinMap i0, LinMap i1);

struct Task {
  LinMap t;  // X -> Y
  LinMap i;  // X0 -> X
  LinMap j;  // Y0 -> Y
  std::size_t k = 0;
  std::string label;
};

struct ChainStage {
  Space u;
  Space v;
  LinMap f;       // U -> V
  LinMap incl_u;  // U_(n-1) -> U_n
  LinMap incl_v;  // V_(n-1) -> V_n
};

struct LogEntry {
  std::size_t stage = 0;  // index of the stage this step appended
  std::string label;
  std::size_t k = 0;
  bool realized = false;  // condition (*) held and the pushouts were made
  std::string note;
  std::optional<Task> task;      // kept for realized steps
  std::optional<QMat> i_prime;   // X -> U_stage
  std::optional<QMat> j_prime;   // Y -> V_stage
};

struct Chain {
  std::vector<ChainStage> stages;
  std::vector<LogEntry> log;
  std::size_t dim_cap = 6;
  std::uint64_t seed = 0;

  const ChainStage& top() const { return stages.back(); }
  std::size_t size() const { return stages.size(); }
};

/// The chain with only stage 0 (the zero operator on 0-spaces).
Chain zero_chain(std::size_t dim_cap, std::uint64_t seed);

/// Coordinate inclusions between stages, from <= to.
LinMap inclusion_u(const Chain& c, std::size_t from, std::size_t to);
LinMap inclusion_v(const Chain& c, std::size_t from, std::size_t to);

/// Task at position p of the stream: p + 1 = 2^a (2b + 1) gives code b, which
/// is unpaired into (k, template). Code 0 is the zero task.
Task task_at(const Chain& c, std::size_t position);
std::vector<Task> enumerate_tasks(const Chain& c, std::size_t budget);

/// Why condition (*) fails for the task against the next stage, or nullopt.
std::optional<std::string> star_failure(const Chain& c, const Task& task);

/// Appends one stage. cap overrides chain.dim_cap when given.
Chain step_chain(Chain c, const Task& task, std::optional<std::size_t> cap = std::nullopt);

struct ChainParams {
  std::size_t stages = 0;
  std::size_t dim_cap = 6;
  std::uint64_t seed = 0;
};

Chain build_chain(const ChainParams& params);

/// (a), (b) at every stage and the (c) checks of every realized step.
Report verify_chain(const Chain& c);

// ---------------------------------------------------------------------------
// Witnesses

struct GWitness {
  LinMap i_prime;  // X -> U_m
  LinMap j_prime;  // Y -> V_m
  std::size_t m = 0;
  Chain chain;
  Rat delta;
  Rat x_distance;  // ||i' restricted to X0 - i||
  Rat y_distance;
  std::vector<std::string> steps;
};

/// (G*): T: X -> Y nonexpansive, x0: X0 -> X and y0: Y0 -> Y isometric,
/// seed a square from S = T restricted to X0 into the given stage. Returns
/// e-embeddings i', j' into a later stage with F_m o i' = j' o T exactly.
/// An inexact seed is first corrected by the square sum; its legs' defect plus
/// its commutation defect must then stay below eps.
GWitness g_witness(const Chain& c, const LinMap& t, const LinMap& x0, const LinMap& y0, const OperatorSquare& seed,
                   std::size_t stage, const Rat& eps, std::size_t dim_cap = kDefaultDimCap);

/// Checks of the g_witness postconditions against the returned chain.
Report verify_g_witness(const GWitness& w, const LinMap& t, const LinMap& x0, const LinMap& y0,
                        const OperatorSquare& seed, std::size_t stage, const Rat& eps);

enum class Side { kDomain, kCodomain };

struct SpaceWitness {
  LinMap f;  // X -> U_m or X -> V_m
  std::size_t m = 0;
  Chain chain;
  Rat distance;  // ||f restricted to X0 - i||
};

/// An eps-embedding of X into a stage side extending i: X0 -> stage up to eps.
SpaceWitness space_witness(const Chain& c, Side side, const LinMap& x0, const LinMap& i, std::size_t stage,
                           const Rat& eps, std::size_t dim_cap = kDefaultDimCap);

/// i: X0 -> U_stage must land in ker F_stage. Returns i': X -> U_m with
/// F_m o i' = 0.
SpaceWitness kernel_witness(const Chain& c, const LinMap& x0, const LinMap& i, std::size_t stage, const Rat& eps,
                            std::size_t dim_cap = kDefaultDimCap);

struct SurjectivityWitness {
  std::size_t m = 0;
  QVec u;
  Chain chain;
};

/// v != 0 in V_stage. Finds u in some U_m with F_m u = v.
SurjectivityWitness surjectivity_witness(const Chain& c, const QVec& v, std::size_t stage,
                                         std::size_t dim_cap = kDefaultDimCap);

/// eps_0 = eps0; eps_n = explicit[n-1] when given, else 2^-(n + offset).
struct EpsSchedule {
  Rat eps0 = 1;
  unsigned offset = 0;
  std::vector<Rat> terms;

  Rat term(std::size_t n) const;
  /// 3 * sum_{n >= 1} eps_n < eps - eps_0 (the dyadic tail is summed exactly).
  bool satisfies_s(const Rat& eps) const;
  static EpsSchedule dyadic(const Rat& eps0 = 1, unsigned offset = 0);
};

struct Truncation {
  LinMap t;     // T_n: X_n -> Y_n
  QMat x_basis; // X_n inside X
  QMat y_basis;
};

/// X_n = span of the first min(n, dim X) coordinates; Y_n adds, in order, the
/// first coordinates of Y and the images T e_i, keeping independent ones.
/// Every basis extends the previous one.
std::vector<Truncation> truncations(const LinMap& t, std::size_t depth);

struct EmbedTranscript {
  std::vector<OperatorSquare> squares;  // i_0 .. i_depth
  std::vector<Truncation> pieces;
  EpsSchedule schedule;
  Chain chain;
};

EmbedTranscript embed_operator(const Chain& c, const LinMap& t, const EpsSchedule& schedule, std::size_t depth,
                               std::size_t dim_cap = kDefaultDimCap);

/// (i) i_n eps_n-embedding; (ii) i_(n+1) restricted to T_n (3 eps_n)-close to i_n.
Report verify_embedding(const EmbedTranscript& tr);

struct BnfTranscript {
  std::vector<OperatorSquare> k_squares;  // k_n: T_n -> T'_n, A to B
  std::vector<OperatorSquare> l_squares;  // l_n: T'_n -> T_(n+1), B to A
  std::vector<Rat> etas;                  // eta_1 .. eta_depth
  EpsSchedule schedule;
  Rat eps;
  Chain a;
  Chain b;
};

/// Seed: a strict eps-embedding of operators from stage from_stage of A to
/// stage to_stage of B. Throws PreconditionError when no dyadic schedule
/// satisfies (s) for the seed's eps_0.
BnfTranscript back_and_forth(const Chain& a, const Chain& b, const OperatorSquare& seed, const Rat& eps,
                             std::size_t depth, std::size_t dim_cap = kDefaultDimCap);

/// Conditions (1)-(5), the eta values, the derived closeness of k_n to
/// k_(n-1) and sum eta_n < 2 eps.
Report verify_bnf(const BnfTranscript& tr);

}  // namespace gurarii
