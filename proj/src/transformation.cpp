#include "gpt/transformation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gpt/operations.hpp"

namespace gpt {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

using PartyMap = std::vector<std::optional<std::size_t>>;

PartyMap identity_map(std::size_t n) {
  PartyMap m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

void require_party(const StateTable& s, std::size_t p, const char* what) {
  if (p >= s.party_count()) {
    throw std::invalid_argument(std::string(what) + ": party " + std::to_string(p) + " out of range");
  }
}

Transformed apply_discard(const StateTable& s, const Discard& d) {
  for (auto p : d.parties) require_party(s, p, "discard");
  const PartySet keep = complement(d.parties, s.party_count());
  if (keep.size() + d.parties.size() != s.party_count()) throw std::invalid_argument("discard: repeated party");
  Transformed out{marginal(s, keep), PartyMap(s.party_count())};
  for (std::size_t t = 0; t < keep.size(); ++t) out.party_map[keep[t]] = t;
  return out;
}

Transformed apply_processing(const StateTable& s, const ClassicalProcessing& c) {
  if (c.parties.empty()) throw std::invalid_argument("classical_processing: no input parties");
  std::size_t inputs = 1;
  for (auto p : c.parties) {
    require_party(s, p, "classical_processing");
    if (!s.system()[p].classical()) {
      throw std::invalid_argument("classical_processing: party " + std::to_string(p) + " is not classical");
    }
    inputs *= static_cast<std::size_t>(s.system()[p].outcomes);
  }
  if (complement(c.parties, s.party_count()).size() + c.parties.size() != s.party_count()) {
    throw std::invalid_argument("classical_processing: repeated party");
  }
  if (c.outputs < 1 || c.map.size() != inputs * static_cast<std::size_t>(c.outputs)) {
    throw std::invalid_argument("classical_processing: map must be outputs x inputs");
  }
  for (std::size_t x = 0; x < inputs; ++x) {
    double col = 0.0;
    for (std::size_t y = 0; y < static_cast<std::size_t>(c.outputs); ++y) {
      const double w = c.map[y * inputs + x];
      if (!(w >= -kTableTol)) throw std::invalid_argument("malformed stochastic map: negative entry");
      col += w;
    }
    if (std::abs(col - 1.0) > kTableTol) {
      std::ostringstream os;
      os << "malformed stochastic map: column " << x << " sums to " << col;
      throw std::invalid_argument(os.str());
    }
  }

  const auto& sys = s.system();
  const std::size_t anchor = *std::min_element(c.parties.begin(), c.parties.end());
  std::vector<PartyType> parties;
  PartyMap map(sys.size());
  for (std::size_t i = 0; i < sys.size(); ++i) {
    if (i == anchor) {
      map[i] = parties.size();
      parties.push_back(PartyType{1, c.outputs, c.name});
    } else if (std::find(c.parties.begin(), c.parties.end(), i) == c.parties.end()) {
      map[i] = parties.size();
      parties.push_back(sys[i]);
    }
  }
  // The anchor party is consumed as an input; its slot now holds the output.
  for (auto p : c.parties) map[p] = std::nullopt;
  SystemType out_sys(std::move(parties));

  // Classical parties have a single setting, so setting rows carry over.
  std::vector<double> out(out_sys.setting_count() * out_sys.outcome_count(), 0.0);
  const auto in_or = sys.outcome_radices();
  const auto out_or = out_sys.outcome_radices();
  std::vector<int> digits(sys.size()), od(out_sys.size()), xd(c.parties.size()), xr(c.parties.size());
  for (std::size_t t = 0; t < c.parties.size(); ++t) xr[t] = sys[c.parties[t]].outcomes;
  const std::size_t out_cols = out_sys.outcome_count();
  for (std::size_t i = 0; i < s.cols(); ++i) {
    unflatten(i, in_or, digits);
    for (std::size_t t = 0; t < c.parties.size(); ++t) xd[t] = digits[c.parties[t]];
    const std::size_t x = flatten(xd, xr);
    std::size_t slot = 0, anchor_slot = 0;
    for (std::size_t q = 0; q < sys.size(); ++q) {
      if (q == anchor) {
        anchor_slot = slot++;
      } else if (std::find(c.parties.begin(), c.parties.end(), q) == c.parties.end()) {
        od[slot++] = digits[q];
      }
    }
    for (int y = 0; y < c.outputs; ++y) {
      const double w = c.map[static_cast<std::size_t>(y) * inputs + x];
      if (w == 0.0) continue;
      od[anchor_slot] = y;
      const std::size_t oi = flatten(od, out_or);
      for (std::size_t j = 0; j < s.rows(); ++j) out[j * out_cols + oi] += w * s(j, i);
    }
  }
  return {StateTable(std::move(out_sys), std::move(out)), std::move(map)};
}

Transformed apply_wiring(const StateTable& s, const Wiring& w) {
  require_party(s, w.party, "wiring");
  const auto& sys = s.system();
  const auto& pt = sys[w.party];
  if (w.setting < 0 || w.setting >= pt.settings) throw std::invalid_argument("wiring: setting out of range");
  auto parties = sys.parties();
  parties[w.party] = PartyType{1, pt.outcomes, pt.name.empty() ? "" : pt.name + "@" + std::to_string(w.setting)};
  SystemType out_sys(std::move(parties));
  std::vector<double> out(out_sys.setting_count() * out_sys.outcome_count(), 0.0);
  const auto in_sr = sys.setting_radices();
  const auto out_sr = out_sys.setting_radices();
  std::vector<int> digits(sys.size());
  for (std::size_t j = 0; j < s.rows(); ++j) {
    unflatten(j, in_sr, digits);
    if (digits[w.party] != w.setting) continue;
    digits[w.party] = 0;
    const std::size_t oj = flatten(digits, out_sr);
    std::copy(s.row(j).begin(), s.row(j).end(), out.begin() + static_cast<std::ptrdiff_t>(oj * s.cols()));
  }
  return {StateTable(std::move(out_sys), std::move(out)), identity_map(sys.size())};
}

}  // namespace

Transformed apply_tracked(const StateTable& s, const Transformation& t) {
  return std::visit(
      overloaded{
          [&](const Discard& d) { return apply_discard(s, d); },
          [&](const AddIndependent& a) { return Transformed{tensor(s, a.state), identity_map(s.party_count())}; },
          [&](const ClassicalProcessing& c) { return apply_processing(s, c); },
          [&](const Wiring& w) { return apply_wiring(s, w); },
          [&](const CloneClassical& c) {
            return Transformed{clone_classical(s, c.party), identity_map(s.party_count())};
          },
      },
      t);
}

StateTable apply_local_transformation(const StateTable& s, const Transformation& t) {
  return apply_tracked(s, t).state;
}

PartySet targets(const Transformation& t) {
  return std::visit(overloaded{
                        [](const Discard& d) { return d.parties; },
                        [](const AddIndependent&) { return PartySet{}; },
                        [](const ClassicalProcessing& c) { return c.parties; },
                        [](const Wiring& w) { return PartySet{w.party}; },
                        [](const CloneClassical& c) { return PartySet{c.party}; },
                    },
                    t);
}

Transformation remap(const Transformation& t, const std::vector<std::optional<std::size_t>>& map) {
  auto one = [&](std::size_t p) {
    if (p >= map.size() || !map[p]) throw std::invalid_argument("remap: party " + std::to_string(p) + " has no image");
    return *map[p];
  };
  auto many = [&](const PartySet& ps) {
    PartySet out;
    for (auto p : ps) out.push_back(one(p));
    return out;
  };
  return std::visit(overloaded{
                        [&](const Discard& d) -> Transformation { return Discard{many(d.parties)}; },
                        [&](const AddIndependent& a) -> Transformation { return a; },
                        [&](const ClassicalProcessing& c) -> Transformation {
                          auto r = c;
                          r.parties = many(c.parties);
                          return r;
                        },
                        [&](const Wiring& w) -> Transformation { return Wiring{one(w.party), w.setting}; },
                        [&](const CloneClassical& c) -> Transformation { return CloneClassical{one(c.party)}; },
                    },
                    t);
}

std::string describe(const Transformation& t, const SystemType& system) {
  auto label = [&](std::size_t p) {
    if (p < system.size() && !system[p].name.empty()) return system[p].name;
    return "#" + std::to_string(p);
  };
  auto list = [&](const PartySet& ps) {
    std::string out;
    for (std::size_t i = 0; i < ps.size(); ++i) out += (i ? "," : "") + label(ps[i]);
    return out;
  };
  return std::visit(overloaded{
                        [&](const Discard& d) { return "discard(" + list(d.parties) + ")"; },
                        [&](const AddIndependent& a) { return "add_independent(" + a.state.system().describe() + ")"; },
                        [&](const ClassicalProcessing& c) {
                          return "classical_processing(" + list(c.parties) + " -> " + std::to_string(c.outputs) +
                                 " outcomes)";
                        },
                        [&](const Wiring& w) {
                          return "wiring(" + label(w.party) + " @ setting " + std::to_string(w.setting) + ")";
                        },
                        [&](const CloneClassical& c) { return "clone_classical(" + label(c.party) + ")"; },
                    },
                    t);
}

ClassicalProcessing function_map(PartySet parties, int inputs, int outputs, const std::vector<int>& f,
                                 std::string name) {
  if (f.size() != static_cast<std::size_t>(inputs)) throw std::invalid_argument("function_map: wrong table size");
  ClassicalProcessing c{std::move(parties), outputs,
                        std::vector<double>(static_cast<std::size_t>(inputs * outputs), 0.0), std::move(name)};
  for (int x = 0; x < inputs; ++x) {
    if (f[x] < 0 || f[x] >= outputs) throw std::invalid_argument("function_map: value out of range");
    c.map[static_cast<std::size_t>(f[x] * inputs + x)] = 1.0;
  }
  return c;
}

}  // namespace gpt
