#include "gpt/entropy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "gpt/operations.hpp"

namespace gpt {

namespace {

constexpr double kTieTol = 1e-12;
constexpr std::size_t kMaxStrategies = 2'000'000;
constexpr std::size_t kMaxCacheEntries = 200'000;

std::string shape_key(const SystemType& system) {
  std::string key;
  for (const auto& p : system.parties()) {
    key += std::to_string(p.settings) + ',' + std::to_string(p.outcomes) + ';';
  }
  return key;
}

Measurement from_cells(const SystemType& sys, const std::vector<std::size_t>& cells, std::size_t dimension,
                       std::string label, bool adaptive) {
  Measurement m;
  m.system = sys;
  m.label = std::move(label);
  m.adaptive = adaptive;
  m.outcomes.reserve(cells.size());
  for (auto c : cells) m.outcomes.push_back(Effect{dimension, {{c, 1.0}}});
  return m;
}

std::string join(const std::vector<int>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

/// Sequential wirings for one party order. Node n at depth d is the
/// flattened outcome history of the first d parties; each node picks a
/// setting for party order[d].
void enumerate_order(const SystemType& sys, const std::vector<std::size_t>& order,
                     std::set<std::vector<std::size_t>>& seen, MeasurementFamily& out) {
  const std::size_t n = sys.size();
  const std::size_t cols = sys.outcome_count();
  const std::size_t dimension = sys.setting_count() * cols;
  const auto sr = sys.setting_radices();
  const auto orad = sys.outcome_radices();

  std::vector<std::size_t> nodes(n), offset(n);
  std::size_t slots = 0;
  std::size_t strategies = 1;
  for (std::size_t d = 0, width = 1; d < n; ++d) {
    nodes[d] = width;
    offset[d] = slots;
    slots += width;
    for (std::size_t w = 0; w < width; ++w) {
      strategies *= static_cast<std::size_t>(sys[order[d]].settings);
      if (strategies > kMaxStrategies) throw std::invalid_argument("adaptive enumeration too large for " + sys.describe());
    }
    width *= static_cast<std::size_t>(sys[order[d]].outcomes);
  }

  std::vector<int> choice(slots, 0), radix(slots);
  for (std::size_t d = 0; d < n; ++d)
    for (std::size_t w = 0; w < nodes[d]; ++w) radix[offset[d] + w] = sys[order[d]].settings;

  std::vector<int> outcome(n), setting(n);
  std::vector<std::size_t> cells(cols);
  for (std::size_t s = 0; s < strategies; ++s) {
    for (std::size_t i = 0; i < cols; ++i) {
      unflatten(i, orad, outcome);
      std::size_t node = 0;
      for (std::size_t d = 0; d < n; ++d) {
        const auto p = order[d];
        setting[p] = choice[offset[d] + node];
        node = node * static_cast<std::size_t>(sys[p].outcomes) + static_cast<std::size_t>(outcome[p]);
      }
      cells[i] = flatten(setting, sr) * cols + i;
    }
    auto key = cells;
    std::sort(key.begin(), key.end());
    if (seen.insert(std::move(key)).second) {
      std::string label = "seq[";
      for (std::size_t d = 0; d < n; ++d) label += (d ? "," : "") + std::to_string(order[d]);
      label += "](";
      for (std::size_t d = 0; d < n; ++d) {
        if (d) label += ';';
        label += join(std::vector<int>(choice.begin() + static_cast<std::ptrdiff_t>(offset[d]),
                                       choice.begin() + static_cast<std::ptrdiff_t>(offset[d] + nodes[d])),
                      '/');
      }
      label += ')';
      out.push_back(from_cells(sys, cells, dimension, std::move(label), true));
    }
    // Advance the mixed-radix strategy counter.
    for (std::size_t k = slots; k-- > 0;) {
      if (++choice[k] < radix[k]) break;
      choice[k] = 0;
    }
  }
}

struct Caches {
  std::mutex mu;
  std::map<std::string, std::shared_ptr<const MeasurementFamily>> families;
  std::unordered_map<std::string, EntropyValue> values;
  std::atomic<bool> enabled{true};
};

Caches& caches() {
  static Caches c;
  return c;
}

bool use_adaptive(const SystemType& sys, EnumerationMode mode) {
  switch (mode) {
    case EnumerationMode::adaptive:
      return true;
    case EnumerationMode::non_adaptive:
      return false;
    case EnumerationMode::automatic:
      break;
  }
  return sys.size() <= 3;
}

}  // namespace

double Effect::apply(const StateTable& s) const {
  if (s.entries().size() != dimension) throw std::invalid_argument("effect dimension does not match state");
  double v = 0.0;
  for (const auto& [idx, w] : terms) v += w * s.entries()[idx];
  return v;
}

std::vector<double> Effect::dense() const {
  std::vector<double> d(dimension, 0.0);
  for (const auto& [idx, w] : terms) d[idx] += w;
  return d;
}

double shannon_entropy(std::span<const double> dist) {
  double total = 0.0;
  for (double p : dist) {
    if (!(p >= -kTableTol)) throw std::invalid_argument("shannon_entropy: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kTableTol) {
    std::ostringstream os;
    os << "shannon_entropy: distribution sums to " << total;
    throw std::invalid_argument(os.str());
  }
  double h = 0.0;
  for (double p : dist)
    if (p > 0.0) h -= p * std::log2(p);
  return std::max(h, 0.0);
}

MeasurementFamily enumerate_fine_grained(const SystemType& system, bool adaptive) {
  if (adaptive && system.size() > 3) {
    throw std::invalid_argument("adaptive enumeration is limited to 3 parties (got " + std::to_string(system.size()) +
                                ")");
  }
  const std::size_t rows = system.setting_count();
  const std::size_t cols = system.outcome_count();
  const auto sr = system.setting_radices();
  MeasurementFamily out;
  std::set<std::vector<std::size_t>> seen;
  std::vector<int> setting(system.size());
  for (std::size_t j = 0; j < rows; ++j) {
    std::vector<std::size_t> cells(cols);
    std::iota(cells.begin(), cells.end(), j * cols);
    seen.insert(cells);
    unflatten(j, sr, setting);
    out.push_back(from_cells(system, cells, rows * cols, "fid(" + join(setting, ',') + ")", false));
  }
  if (adaptive && system.size() > 1) {
    std::vector<std::size_t> order(system.size());
    std::iota(order.begin(), order.end(), 0);
    do {
      enumerate_order(system, order, seen, out);
    } while (std::next_permutation(order.begin(), order.end()));
  }
  return out;
}

std::shared_ptr<const MeasurementFamily> fine_grained_family(const SystemType& system, bool adaptive) {
  auto& c = caches();
  const std::string key = shape_key(system) + (adaptive ? "a" : "n");
  {
    std::lock_guard lock(c.mu);
    if (auto it = c.families.find(key); it != c.families.end()) return it->second;
  }
  auto fam = std::make_shared<const MeasurementFamily>(enumerate_fine_grained(system, adaptive));
  std::lock_guard lock(c.mu);
  return c.families.emplace(key, std::move(fam)).first->second;
}

std::vector<double> outcome_distribution(const StateTable& s, const Measurement& m) {
  if (!m.system.same_shape(s.system())) {
    throw std::invalid_argument("measurement on " + m.system.describe() + " applied to " + s.system().describe());
  }
  std::vector<double> p;
  p.reserve(m.outcomes.size());
  for (const auto& e : m.outcomes) p.push_back(e.apply(s));
  return p;
}

EntropyValue measurement_entropy(const StateTable& s, EnumerationMode mode) {
  const bool adaptive = use_adaptive(s.system(), mode);
  auto& c = caches();
  std::string key;
  if (c.enabled) {
    key = shape_key(s.system()) + (adaptive ? "a" : "n");
    const auto offset = key.size();
    key.resize(offset + s.entries().size() * sizeof(double));
    std::memcpy(key.data() + offset, s.entries().data(), s.entries().size() * sizeof(double));
    std::lock_guard lock(c.mu);
    if (auto it = c.values.find(key); it != c.values.end()) return it->second;
  }

  auto family = fine_grained_family(s.system(), adaptive);
  std::vector<double> values(family->size());
  std::vector<double> dist;
  double best = INFINITY;
  for (std::size_t k = 0; k < family->size(); ++k) {
    dist = outcome_distribution(s, (*family)[k]);
    values[k] = shannon_entropy(dist);
    best = std::min(best, values[k]);
  }
  std::size_t arg = 0;
  bool found = false;
  for (std::size_t k = 0; k < family->size(); ++k) {
    if (values[k] > best + kTieTol) continue;
    if (!found || (*family)[k].label < (*family)[arg].label) arg = k;
    found = true;
  }
  EntropyValue v{best, std::move(family), arg};

  if (c.enabled) {
    std::lock_guard lock(c.mu);
    if (c.values.size() >= kMaxCacheEntries) c.values.clear();
    c.values.emplace(std::move(key), v);
  }
  return v;
}

EntropyValue entropy_of(const StateTable& s, const PartySet& parties) {
  PartySet sorted = parties;
  std::sort(sorted.begin(), sorted.end());
  return measurement_entropy(marginal(s, sorted));
}

PartySet disjoint_union(const PartySet& a, const PartySet& b) {
  PartySet u = a;
  for (auto p : b) {
    if (std::find(a.begin(), a.end(), p) != a.end()) {
      throw std::invalid_argument("party sets overlap at party " + std::to_string(p));
    }
    u.push_back(p);
  }
  std::sort(u.begin(), u.end());
  if (std::adjacent_find(u.begin(), u.end()) != u.end()) throw std::invalid_argument("party listed twice");
  return u;
}

double conditional_entropy(const StateTable& s, const PartySet& a, const PartySet& b) {
  const PartySet ab = disjoint_union(a, b);
  return entropy_of(s, ab).bits - entropy_of(s, b).bits;
}

double mutual_information(const StateTable& s, const PartySet& a, const PartySet& b) {
  const PartySet ab = disjoint_union(a, b);
  return entropy_of(s, a).bits + entropy_of(s, b).bits - entropy_of(s, ab).bits;
}

void clear_entropy_cache() {
  auto& c = caches();
  std::lock_guard lock(c.mu);
  c.values.clear();
}

void set_entropy_cache_enabled(bool enabled) {
  caches().enabled = enabled;
  if (!enabled) clear_entropy_cache();
}

std::size_t entropy_cache_size() {
  auto& c = caches();
  std::lock_guard lock(c.mu);
  return c.values.size();
}

}  // namespace gpt
