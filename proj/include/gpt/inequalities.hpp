#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "gpt/check_report.hpp"
#include "gpt/icgame.hpp"
#include "gpt/state_table.hpp"
#include "gpt/transformation.hpp"

namespace gpt {

/// Local deterministic product states, plus each PR variant placed on every
/// pair of gbits with deterministic states elsewhere. For two gbits this is
/// the 24-vertex no-signalling polytope.
std::vector<StateTable> boxworld_vertices(const SystemType& system);

/// Dirichlet(1, ..., 1) mixture of boxworld_vertices; deterministic in seed.
StateTable sample_boxworld_state(const SystemType& system, std::uint64_t seed);

/// Search-oriented sampler. Mixes three generators: a dense Dirichlet
/// mixture, a mixture of at most four vertices, and states of the form
/// Σ_c p(c) δ_c ⊗ V_c (classical record c, vertex V_c of the other parties).
StateTable sample_search_state(const SystemType& system, std::mt19937_64& rng);

/// H(A|B) <= H(A|B') where B' is what `steps` (local to B) leave of B.
/// Parties outside A and B are discarded first.
CheckReport check_dpi(const StateTable& s, const PartySet& A, const PartySet& B,
                      std::span<const Transformation> steps);
CheckReport check_dpi(const StateTable& s, const PartySet& A, const PartySet& B, const Transformation& t);

/// H(A|CD) <= H(A|C), i.e. DPI with D discarded.
CheckReport check_ssa(const StateTable& s, const PartySet& A, const PartySet& C, const PartySet& D);

/// H(A|B) <= H(A).
CheckReport check_conditioning(const StateTable& s, const PartySet& A, const PartySet& B);

/// H(AB) <= H(A) + H(B).
CheckReport check_subadditivity(const StateTable& s, const PartySet& A, const PartySet& B);

/// H(A_1 ... A_n | γ) <= Σ_i H(A_i | γ).
CheckReport check_lemma1(const StateTable& s, const std::vector<PartySet>& parts, const PartySet& gamma);
/// H(A|B) = H(A); throws unless s restricted to A ∪ B is a product across A | B.
CheckReport check_lemma2(const StateTable& s, const PartySet& A, const PartySet& B);
/// 0 <= H(X|Y); throws unless every party of X is classical.
CheckReport check_lemma3(const StateTable& s, const PartySet& X, const PartySet& Y);
/// n - m <= H(a|Bx) on a game transcript.
CheckReport check_lemma4(const Transcript& t);

struct LemmaParams {
  std::vector<PartySet> parts;  // lemma 1: the A_i; lemmas 2, 3: parts[0] is A or X
  PartySet given;               // γ, B or Y
  const Transcript* transcript = nullptr;  // lemma 4
};

CheckReport check_lemma(const StateTable& s, int which, const LemmaParams& params);

/// Recomputes every witness term from its state with the entropy cache
/// cleared, then settles the report again.
CheckReport reevaluate(const CheckReport& r);

struct ProofChainTrace {
  std::vector<CheckReport> steps;  // lemma 4, lemma 1, DPI to the guesses, I vs m
  int first_failure = -1;
  double I = 0.0;
};

ProofChainTrace trace_theorem2_chain(const Transcript& t);

enum class SearchKind { dpi, ssa, lemma1, lemma3, subadditivity };

SearchKind parse_search_kind(const std::string& name);
std::string to_string(SearchKind k);
/// Default system per kind: ssa and lemma1 use (c, c, gbit), dpi three
/// classical bits, lemma3 a classical bit and two gbits, subadditivity two gbits.
SystemType default_search_system(SearchKind k);

/// One randomized check; rng seeded with seed XOR trial.
CheckReport search_trial(SearchKind kind, const SystemType& system, std::uint64_t trial_seed);

struct SearchResult {
  CheckReport best;
  std::uint64_t best_trial = 0;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
  double best_margin = 0.0;
};

/// Largest margin over `trials` independent checks; ties go to the lowest
/// trial index. Parallel over GPT_ENTROPY_THREADS (default: hardware).
SearchResult search_counterexamples(SearchKind kind, const SystemType& system, std::uint64_t trials,
                                    std::uint64_t seed);

}  // namespace gpt
