#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gpt/state_table.hpp"

namespace gpt {

/// Removes parties (marginal over the rest).
struct Discard {
  PartySet parties;
};

/// Appends an independent system.
struct AddIndependent {
  StateTable state;
};

/// Column-stochastic map from the joint outcome of classical `parties`
/// (row-major in the listed order) to a new classical party with
/// `outputs` outcomes. map[y * inputs + x] = P(y | x). The result replaces
/// the inputs at the position of the smallest listed index.
struct ClassicalProcessing {
  PartySet parties;
  int outputs = 1;
  std::vector<double> map;
  std::string name;
};

/// Measures `party` with a fixed fiducial setting and keeps the classical
/// record of the outcome in its place.
struct Wiring {
  std::size_t party = 0;
  int setting = 0;
};

/// Appends a perfectly correlated copy of a classical party.
struct CloneClassical {
  std::size_t party = 0;
};

using Transformation = std::variant<Discard, AddIndependent, ClassicalProcessing, Wiring, CloneClassical>;

/// Result of a transformation together with where each input party went
/// (nullopt when consumed).
struct Transformed {
  StateTable state;
  std::vector<std::optional<std::size_t>> party_map;
};

Transformed apply_tracked(const StateTable& s, const Transformation& t);
StateTable apply_local_transformation(const StateTable& s, const Transformation& t);

/// Parties the transformation reads or writes (empty for AddIndependent).
PartySet targets(const Transformation& t);
/// Rewrites party indices through `map` (old index -> new index).
Transformation remap(const Transformation& t, const std::vector<std::optional<std::size_t>>& map);
std::string describe(const Transformation& t, const SystemType& system);

/// Deterministic processing y = f(x) as a ClassicalProcessing map.
ClassicalProcessing function_map(PartySet parties, int inputs, int outputs,
                                 const std::vector<int>& f, std::string name = {});

}  // namespace gpt
