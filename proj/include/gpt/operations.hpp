#pragma once

#include <span>
#include <string>
#include <vector>

#include "gpt/check_report.hpp"
#include "gpt/state_table.hpp"

namespace gpt {

/// P_AB(i i'|j j') = P_A(i|j) P_B(i'|j'); a's parties first.
StateTable tensor(const StateTable& a, const StateTable& b);

/// Reduced state on `keep` (any order; output follows the given order).
/// Throws SignallingError if the result depends on the discarded settings.
StateTable marginal(const StateTable& s, const PartySet& keep);

/// State of the other parties after fiducial `setting` on `party` returned
/// `outcome`. Throws ZeroProbabilityError if that outcome has probability 0.
StateTable conditional_marginal(const StateTable& s, std::size_t party, int outcome,
                                int setting);

/// Probability of `outcome` for fiducial `setting` on `party`.
double outcome_probability(const StateTable& s, std::size_t party, int outcome, int setting);

CheckReport check_no_signalling(const StateTable& s);

/// Relabels parties: output party t is input party order[t].
StateTable permute_parties(const StateTable& s, std::span<const std::size_t> order);

/// Convex combination Σ w_i s_i of tables on the same system.
StateTable mixture(std::span<const double> weights, std::span<const StateTable> states);

/// Complement of `parties` in {0..n-1}, ascending.
PartySet complement(const PartySet& parties, std::size_t n);

/// Appends a classical copy of classical party `x`: the party is first
/// joined with a fresh classical system in pure state 0 and the pair is then
/// mapped by i,k -> i,(i+k) mod l, which sends Σ p_i μ_i ⊗ μ_0 to Σ p_i μ_i ⊗ μ_i.
StateTable clone_classical(const StateTable& s, std::size_t x);

}  // namespace gpt
