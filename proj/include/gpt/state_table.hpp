#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpt {

/// Equality tolerance for probability-table identities.
inline constexpr double kTableTol = 1e-12;
/// Comparison tolerance for entropies (log arithmetic sits above table noise).
inline constexpr double kEntropyTol = 1e-9;

class SignallingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroProbabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One subsystem of type (k, l): k fiducial settings with l outcomes each.
struct PartyType {
  int settings = 1;
  int outcomes = 1;
  std::string name;

  bool classical() const { return settings == 1; }
  bool same_shape(const PartyType& o) const {
    return settings == o.settings && outcomes == o.outcomes;
  }
};

using PartySet = std::vector<std::size_t>;

/// Ordered list of parties. The empty list is the vacuum.
class SystemType {
 public:
  SystemType() = default;
  explicit SystemType(std::vector<PartyType> parties);

  std::size_t size() const { return parties_.size(); }
  bool empty() const { return parties_.empty(); }
  const PartyType& operator[](std::size_t i) const { return parties_[i]; }
  const std::vector<PartyType>& parties() const { return parties_; }

  std::size_t setting_count() const { return setting_count_; }
  std::size_t outcome_count() const { return outcome_count_; }

  std::vector<int> setting_radices() const;
  std::vector<int> outcome_radices() const;

  bool all_classical() const;
  /// Same (k, l) sequence; names are ignored.
  bool same_shape(const SystemType& o) const;
  /// Index of the party called `name`, or of the decimal index `name`.
  std::size_t find(const std::string& name) const;

  SystemType subsystem(const PartySet& keep) const;
  std::string describe() const;

 private:
  std::vector<PartyType> parties_;
  std::size_t setting_count_ = 1;
  std::size_t outcome_count_ = 1;
};

SystemType concat(const SystemType& a, const SystemType& b);

/// Row-major mixed-radix flattening; the last digit varies fastest.
std::size_t flatten(std::span<const int> digits, std::span<const int> radices);
void unflatten(std::size_t index, std::span<const int> radices, std::span<int> digits);

/// Joint fiducial probabilities P(i|j), stored as table[J][I] with J the
/// flattened setting vector and I the flattened outcome vector.
///
/// Construction only checks the shape; use `diagnose` / `require_valid` for
/// normalization and no-signalling.
class StateTable {
 public:
  StateTable() : StateTable(SystemType{}, {1.0}) {}
  StateTable(SystemType system, std::vector<double> entries);

  const SystemType& system() const { return system_; }
  std::size_t party_count() const { return system_.size(); }
  std::size_t rows() const { return system_.setting_count(); }
  std::size_t cols() const { return system_.outcome_count(); }

  double operator()(std::size_t setting, std::size_t outcome) const {
    return entries_[setting * cols() + outcome];
  }
  double& operator()(std::size_t setting, std::size_t outcome) {
    return entries_[setting * cols() + outcome];
  }
  std::span<const double> row(std::size_t setting) const {
    return {entries_.data() + setting * cols(), cols()};
  }
  const std::vector<double>& entries() const { return entries_; }

  /// Same table with party names replaced.
  StateTable renamed(std::vector<std::string> names) const;

 private:
  SystemType system_;
  std::vector<double> entries_;
};

double max_abs_difference(const StateTable& a, const StateTable& b);

struct TableDiagnostics {
  double normalization = 0.0;  // max_J |Σ_I P(I|J) - 1|
  double range = 0.0;          // max distance of an entry outside [0, 1]
  double signalling = 0.0;     // worst marginal setting-dependence
  PartySet worst_kept;         // parties of the worst marginal
  std::size_t worst_setting_a = 0, worst_setting_b = 0;  // settings of the rest

  double worst() const;
  bool ok(double tol = kTableTol) const { return worst() <= tol; }
};

TableDiagnostics diagnose(const StateTable& s);
/// Throws std::invalid_argument (normalization/range) or SignallingError.
void require_valid(const StateTable& s, double tol = kTableTol);

}  // namespace gpt
