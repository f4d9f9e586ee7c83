#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gpt/state_table.hpp"

namespace gpt {

/// Linear functional R on the (J, I) table space, stored sparsely as
/// (flat index J * cols + I, weight) pairs. R . P is an outcome probability.
struct Effect {
  std::size_t dimension = 0;
  std::vector<std::pair<std::size_t, double>> terms;

  double apply(const StateTable& s) const;
  std::vector<double> dense() const;
};

struct Measurement {
  SystemType system;
  std::vector<Effect> outcomes;
  /// "fid(j1,...,jn)" for a product of fiducials, "seq[order](settings per node)"
  /// for a sequential wiring whose later settings depend on earlier outcomes.
  std::string label;
  bool fine_grained = true;
  bool adaptive = false;
};

using MeasurementFamily = std::vector<Measurement>;

enum class EnumerationMode {
  automatic,     // adaptive for at most 3 parties, product fiducials otherwise
  non_adaptive,
  adaptive,
};

struct EntropyValue {
  double bits = 0.0;
  std::shared_ptr<const MeasurementFamily> family;
  std::size_t index = 0;

  const Measurement& argmin() const { return (*family)[index]; }
  std::size_t n_measurements() const { return family->size(); }
};

/// -Σ p log2 p with 0 log 0 = 0. Throws std::invalid_argument unless the
/// input is a probability vector within kTableTol.
double shannon_entropy(std::span<const double> dist);

/// Fine-grained measurements built from local fiducials: one product
/// measurement per joint setting, plus (adaptive) every sequential wiring in
/// every party order. Duplicates (same effect set) are dropped, keeping the
/// first. Adaptive mode is refused above 3 parties.
MeasurementFamily enumerate_fine_grained(const SystemType& system, bool adaptive);

/// Shared, memoized enumeration for the system's (k, l) shape.
std::shared_ptr<const MeasurementFamily> fine_grained_family(const SystemType& system, bool adaptive);

std::vector<double> outcome_distribution(const StateTable& s, const Measurement& m);

/// Minimum Shannon entropy of the outcome distribution over the
/// fine-grained family; ties go to the lexicographically smallest label.
EntropyValue measurement_entropy(const StateTable& s, EnumerationMode mode = EnumerationMode::automatic);

/// measurement_entropy of the marginal on `parties` (vacuum if empty).
EntropyValue entropy_of(const StateTable& s, const PartySet& parties);

/// H(AB) - H(B). A and B must be disjoint; other parties are discarded.
double conditional_entropy(const StateTable& s, const PartySet& a, const PartySet& b);

/// H(A) + H(B) - H(AB).
double mutual_information(const StateTable& s, const PartySet& a, const PartySet& b);

/// The cache is keyed by the table's shape and raw entry bytes and is safe
/// under concurrent use.
void clear_entropy_cache();
void set_entropy_cache_enabled(bool enabled);
std::size_t entropy_cache_size();

/// Sorted union of two disjoint party sets; throws on overlap.
PartySet disjoint_union(const PartySet& a, const PartySet& b);

}  // namespace gpt
