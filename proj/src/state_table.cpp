#include "gpt/state_table.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gpt/operations.hpp"

namespace gpt {

SystemType::SystemType(std::vector<PartyType> parties) : parties_(std::move(parties)) {
  for (const auto& p : parties_) {
    if (p.settings < 1 || p.outcomes < 1) {
      throw std::invalid_argument("party type needs k >= 1 and l >= 1");
    }
    setting_count_ *= static_cast<std::size_t>(p.settings);
    outcome_count_ *= static_cast<std::size_t>(p.outcomes);
  }
}

std::vector<int> SystemType::setting_radices() const {
  std::vector<int> r;
  r.reserve(parties_.size());
  for (const auto& p : parties_) r.push_back(p.settings);
  return r;
}

std::vector<int> SystemType::outcome_radices() const {
  std::vector<int> r;
  r.reserve(parties_.size());
  for (const auto& p : parties_) r.push_back(p.outcomes);
  return r;
}

bool SystemType::all_classical() const {
  return std::all_of(parties_.begin(), parties_.end(), [](const PartyType& p) { return p.classical(); });
}

bool SystemType::same_shape(const SystemType& o) const {
  if (size() != o.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!parties_[i].same_shape(o.parties_[i])) return false;
  }
  return true;
}

std::size_t SystemType::find(const std::string& name) const {
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    if (parties_[i].name == name) return i;
  }
  if (!name.empty() && std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    const auto idx = std::stoul(name);
    if (idx < parties_.size()) return idx;
  }
  throw std::invalid_argument("no party named '" + name + "' in system " + describe());
}

SystemType SystemType::subsystem(const PartySet& keep) const {
  std::vector<PartyType> out;
  out.reserve(keep.size());
  for (auto i : keep) {
    if (i >= parties_.size()) throw std::invalid_argument("party index out of range");
    out.push_back(parties_[i]);
  }
  return SystemType(std::move(out));
}

std::string SystemType::describe() const {
  if (parties_.empty()) return "vacuum";
  std::ostringstream os;
  for (std::size_t i = 0; i < parties_.size(); ++i) {
    if (i) os << " x ";
    if (!parties_[i].name.empty()) os << parties_[i].name << ':';
    os << '(' << parties_[i].settings << ',' << parties_[i].outcomes << ')';
  }
  return os.str();
}

SystemType concat(const SystemType& a, const SystemType& b) {
  auto parties = a.parties();
  parties.insert(parties.end(), b.parties().begin(), b.parties().end());
  return SystemType(std::move(parties));
}

std::size_t flatten(std::span<const int> digits, std::span<const int> radices) {
  std::size_t idx = 0;
  for (std::size_t t = 0; t < radices.size(); ++t) {
    idx = idx * static_cast<std::size_t>(radices[t]) + static_cast<std::size_t>(digits[t]);
  }
  return idx;
}

void unflatten(std::size_t index, std::span<const int> radices, std::span<int> digits) {
  for (std::size_t t = radices.size(); t-- > 0;) {
    const auto r = static_cast<std::size_t>(radices[t]);
    digits[t] = static_cast<int>(index % r);
    index /= r;
  }
}

StateTable::StateTable(SystemType system, std::vector<double> entries)
    : system_(std::move(system)), entries_(std::move(entries)) {
  if (entries_.size() != system_.setting_count() * system_.outcome_count()) {
    throw std::invalid_argument("state table has " + std::to_string(entries_.size()) + " entries, system " +
                                system_.describe() + " needs " +
                                std::to_string(system_.setting_count() * system_.outcome_count()));
  }
}

StateTable StateTable::renamed(std::vector<std::string> names) const {
  if (names.size() != party_count()) throw std::invalid_argument("renamed: wrong number of names");
  auto parties = system_.parties();
  for (std::size_t i = 0; i < parties.size(); ++i) parties[i].name = std::move(names[i]);
  return StateTable(SystemType(std::move(parties)), entries_);
}

double max_abs_difference(const StateTable& a, const StateTable& b) {
  if (!a.system().same_shape(b.system())) return INFINITY;
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return d;
}

double TableDiagnostics::worst() const { return std::max({normalization, range, signalling}); }

TableDiagnostics diagnose(const StateTable& s) {
  TableDiagnostics d;
  for (std::size_t j = 0; j < s.rows(); ++j) {
    double total = 0.0;
    for (double p : s.row(j)) {
      total += p;
      d.range = std::max({d.range, -p, p - 1.0});
    }
    d.normalization = std::max(d.normalization, std::abs(total - 1.0));
  }
  auto ns = check_no_signalling(s);
  d.signalling = ns.lhs_bits;
  if (auto it = ns.witness.partition.find("kept"); it != ns.witness.partition.end()) d.worst_kept = it->second;
  if (auto it = ns.witness.partition.find("settings"); it != ns.witness.partition.end() && it->second.size() == 2) {
    d.worst_setting_a = it->second[0];
    d.worst_setting_b = it->second[1];
  }
  return d;
}

void require_valid(const StateTable& s, double tol) {
  const auto d = diagnose(s);
  if (d.normalization > tol || d.range > tol) {
    std::ostringstream os;
    os << "invalid state table: normalization deviation " << d.normalization << ", range deviation " << d.range;
    throw std::invalid_argument(os.str());
  }
  if (d.signalling > tol) {
    std::ostringstream os;
    os << "state table signals: marginal deviation " << d.signalling;
    throw SignallingError(os.str());
  }
}

}  // namespace gpt
