#include "gpt/inequalities.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "gpt/entropy.hpp"
#include "gpt/named_states.hpp"
#include "gpt/operations.hpp"

namespace gpt {

namespace {

constexpr std::size_t kMaxVertices = 20000;

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<double> dirichlet(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - uniform01(rng));
    total += x;
  }
  for (auto& x : w) x /= total;
  return w;
}

std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(rng, i)]);
}

std::vector<StateTable> local_vertices(const PartyType& p) {
  std::vector<StateTable> out;
  std::size_t count = 1;
  for (int j = 0; j < p.settings; ++j) count *= static_cast<std::size_t>(p.outcomes);
  for (std::size_t v = 0; v < count; ++v) {
    std::vector<double> e(static_cast<std::size_t>(p.settings * p.outcomes), 0.0);
    std::size_t r = v;
    for (int j = p.settings; j-- > 0;) {
      e[static_cast<std::size_t>(j * p.outcomes) + r % static_cast<std::size_t>(p.outcomes)] = 1.0;
      r /= static_cast<std::size_t>(p.outcomes);
    }
    out.emplace_back(SystemType({p}), std::move(e));
  }
  return out;
}

/// Inverse of a party ordering: builds the permutation that puts parties
/// listed in `placed` back at their original positions.
std::vector<std::size_t> restore_order(const std::vector<std::size_t>& placed) {
  std::vector<std::size_t> order(placed.size());
  for (std::size_t pos = 0; pos < placed.size(); ++pos) order[placed[pos]] = pos;
  return order;
}

std::vector<StateTable> build_vertices(const SystemType& sys) {
  std::size_t total = 1;
  for (const auto& p : sys.parties()) {
    total *= static_cast<std::size_t>(std::pow(p.outcomes, p.settings));
    if (total > kMaxVertices) throw std::invalid_argument("too many vertices for " + sys.describe());
  }
  std::vector<StateTable> out{StateTable{}};
  for (const auto& p : sys.parties()) {
    std::vector<StateTable> next;
    for (const auto& a : out)
      for (const auto& b : local_vertices(p)) next.push_back(tensor(a, b));
    out = std::move(next);
  }
  const PartyType gbit{2, 2, ""};
  for (std::size_t p = 0; p < sys.size(); ++p)
    for (std::size_t q = p + 1; q < sys.size(); ++q) {
      if (!sys[p].same_shape(gbit) || !sys[q].same_shape(gbit)) continue;
      std::vector<std::size_t> rest;
      for (std::size_t r = 0; r < sys.size(); ++r)
        if (r != p && r != q) rest.push_back(r);
      std::vector<StateTable> others{StateTable{}};
      for (auto r : rest) {
        std::vector<StateTable> next;
        for (const auto& a : others)
          for (const auto& b : local_vertices(sys[r])) next.push_back(tensor(a, b));
        others = std::move(next);
      }
      std::vector<std::size_t> placed{p, q};
      placed.insert(placed.end(), rest.begin(), rest.end());
      const auto order = restore_order(placed);
      for (int m = 0; m < 8; ++m)
        for (const auto& o : others) {
          out.push_back(permute_parties(tensor(pr_variant(m >> 2 & 1, m >> 1 & 1, m & 1), o), order));
          if (out.size() > kMaxVertices) throw std::invalid_argument("too many vertices for " + sys.describe());
        }
    }
  std::vector<std::string> names;
  for (const auto& p : sys.parties()) names.push_back(p.name);
  for (auto& v : out) v = v.renamed(names);
  return out;
}

std::shared_ptr<const std::vector<StateTable>> cached_vertices(const SystemType& sys) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const std::vector<StateTable>>> cache;
  const std::string key = sys.describe();
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto v = std::make_shared<const std::vector<StateTable>>(build_vertices(sys));
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(v)).first->second;
}

StateTable sparse_mixture(const std::vector<StateTable>& verts, std::mt19937_64& rng) {
  const std::size_t support = 1 + below(rng, 4);
  std::vector<StateTable> chosen;
  for (std::size_t i = 0; i < support; ++i) chosen.push_back(verts[below(rng, verts.size())]);
  std::vector<double> w = rng() % 2 ? dirichlet(rng, support) : std::vector<double>(support, 1.0 / support);
  return mixture(w, chosen);
}

StateTable record_mixture(const SystemType& sys, std::mt19937_64& rng) {
  PartySet c, q;
  for (std::size_t p = 0; p < sys.size(); ++p) (sys[p].classical() ? c : q).push_back(p);
  const auto rec_sys = sys.subsystem(c);
  const auto verts = cached_vertices(sys.subsystem(q));
  const std::size_t records = rec_sys.outcome_count();
  std::vector<double> p = rng() % 2 ? dirichlet(rng, records) : std::vector<double>(records, 1.0 / records);
  if (rng() % 3 == 0) {
    for (auto& x : p)
      if (rng() % 2) x = 0.0;
    double t = std::accumulate(p.begin(), p.end(), 0.0);
    if (t == 0.0) p[0] = t = 1.0;
    for (auto& x : p) x /= t;
  }
  std::vector<double> weights;
  std::vector<StateTable> parts;
  for (std::size_t r = 0; r < records; ++r) {
    std::vector<double> point(records, 0.0);
    point[r] = 1.0;
    weights.push_back(p[r]);
    parts.push_back(tensor(StateTable(rec_sys, point), (*verts)[below(rng, verts->size())]));
  }
  std::vector<std::size_t> placed = c;
  placed.insert(placed.end(), q.begin(), q.end());
  return permute_parties(mixture(weights, parts), restore_order(placed));
}

void require_parties(const StateTable& s, const PartySet& ps, const char* what) {
  for (auto p : ps)
    if (p >= s.party_count()) throw std::invalid_argument(std::string(what) + ": party " + std::to_string(p) + " out of range");
}

PartySet sorted(PartySet ps) {
  std::sort(ps.begin(), ps.end());
  return ps;
}

/// Positions of `ps` inside the sorted list `keep`.
PartySet positions(const PartySet& keep, const PartySet& ps) {
  PartySet out;
  for (auto p : ps) out.push_back(static_cast<std::size_t>(std::find(keep.begin(), keep.end(), p) - keep.begin()));
  return sorted(out);
}

std::string set_label(const SystemType& sys, const PartySet& ps) {
  if (ps.empty()) return "∅";
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i) out += ',';
    out += sys[ps[i]].name.empty() ? std::to_string(ps[i]) : sys[ps[i]].name;
  }
  return out;
}

void add_term(CheckReport& r, std::size_t state, const PartySet& parties, double lhs_coef, double rhs_coef) {
  const auto& s = r.witness.states[state];
  EntropyTerm t;
  t.parties = sorted(parties);
  t.state = state;
  t.expr = "H(" + set_label(s.system(), t.parties) + ")";
  const auto v = entropy_of(s, t.parties);
  t.bits = v.bits;
  t.argmin = t.parties.empty() ? "vacuum" : v.argmin().label;
  t.lhs_coef = lhs_coef;
  t.rhs_coef = rhs_coef;
  r.witness.terms.push_back(std::move(t));
}

/// Adds H(A|B) = H(AB) - H(B) with weight w to one side.
void add_conditional(CheckReport& r, std::size_t state, const PartySet& A, const PartySet& B, double w, bool lhs) {
  add_term(r, state, disjoint_union(A, B), lhs ? w : 0.0, lhs ? 0.0 : w);
  add_term(r, state, B, lhs ? -w : 0.0, lhs ? 0.0 : -w);
}

void require_disjoint(const PartySet& a, const PartySet& b) { (void)disjoint_union(a, b); }

}  // namespace

std::vector<StateTable> boxworld_vertices(const SystemType& system) { return *cached_vertices(system); }

StateTable sample_boxworld_state(const SystemType& system, std::uint64_t seed) {
  const auto verts = cached_vertices(system);
  std::mt19937_64 rng(seed);
  return mixture(dirichlet(rng, verts->size()), *verts);
}

StateTable sample_search_state(const SystemType& system, std::mt19937_64& rng) {
  const auto verts = cached_vertices(system);
  const bool mixed = !system.all_classical() &&
                     std::any_of(system.parties().begin(), system.parties().end(), [](const PartyType& p) { return p.classical(); });
  switch (below(rng, 3)) {
    case 0:
      return mixture(dirichlet(rng, verts->size()), *verts);
    case 1:
      return sparse_mixture(*verts, rng);
    default:
      return mixed ? record_mixture(system, rng) : sparse_mixture(*verts, rng);
  }
}

CheckReport check_dpi(const StateTable& s, const PartySet& A, const PartySet& B, std::span<const Transformation> steps) {
  if (A.empty()) throw std::invalid_argument("check_dpi: A is empty");
  require_parties(s, A, "check_dpi");
  require_parties(s, B, "check_dpi");
  const PartySet keep = disjoint_union(A, B);
  for (const auto& t : steps)
    for (auto p : targets(t))
      if (std::find(B.begin(), B.end(), p) == B.end()) {
        throw std::invalid_argument("check_dpi: transformation touches party " + std::to_string(p) + " outside B");
      }

  CheckReport r;
  r.name = "dpi";
  r.witness.states.push_back(marginal(s, keep));
  std::vector<std::optional<std::size_t>> where(s.party_count());
  for (std::size_t i = 0; i < keep.size(); ++i) where[keep[i]] = i;
  StateTable cur = r.witness.states[0];
  std::string desc;
  for (const auto& t : steps) {
    const auto local = remap(t, where);
    if (!desc.empty()) desc += "; ";
    desc += describe(local, cur.system());
    auto next = apply_tracked(cur, local);
    for (auto& w : where)
      if (w) w = next.party_map[*w];
    cur = std::move(next.state);
  }
  PartySet A1;
  for (auto a : A) A1.push_back(*where[a]);
  A1 = sorted(A1);
  const PartySet B1 = complement(A1, cur.party_count());
  r.witness.states.push_back(std::move(cur));

  const PartySet A0 = positions(keep, A), B0 = positions(keep, B);
  r.witness.partition = {{"A", A0}, {"B", B0}, {"A'", A1}, {"B'", B1}};
  r.witness.transformation = desc.empty() ? "identity" : desc;
  r.witness.note = "H(A|B) <= H(A|B')";
  add_conditional(r, 0, A0, B0, 1.0, true);
  add_conditional(r, 1, A1, B1, 1.0, false);
  settle(r);
  return r;
}

CheckReport check_dpi(const StateTable& s, const PartySet& A, const PartySet& B, const Transformation& t) {
  return check_dpi(s, A, B, std::span<const Transformation>(&t, 1));
}

CheckReport check_ssa(const StateTable& s, const PartySet& A, const PartySet& C, const PartySet& D) {
  if (C.empty() && D.empty()) throw std::invalid_argument("check_ssa: C and D are both empty");
  if (D.empty()) throw std::invalid_argument("check_ssa: D is empty");
  const PartySet CD = disjoint_union(C, D);
  require_disjoint(A, CD);
  auto r = check_dpi(s, A, CD, Transformation{Discard{D}});
  const PartySet keep = disjoint_union(A, CD);
  r.name = "ssa";
  r.witness.partition["C"] = positions(keep, C);
  r.witness.partition["D"] = positions(keep, D);
  r.witness.note = "H(A|CD) <= H(A|C)";
  return r;
}

CheckReport check_conditioning(const StateTable& s, const PartySet& A, const PartySet& B) {
  if (B.empty()) throw std::invalid_argument("check_conditioning: B is empty");
  auto r = check_dpi(s, A, B, Transformation{Discard{B}});
  r.name = "conditioning";
  r.witness.note = "H(A|B) <= H(A)";
  return r;
}

CheckReport check_subadditivity(const StateTable& s, const PartySet& A, const PartySet& B) {
  if (A.empty() || B.empty()) throw std::invalid_argument("check_subadditivity: empty party set");
  require_parties(s, A, "check_subadditivity");
  require_parties(s, B, "check_subadditivity");
  const PartySet keep = disjoint_union(A, B);
  CheckReport r;
  r.name = "subadditivity";
  r.witness.states.push_back(marginal(s, keep));
  const PartySet A0 = positions(keep, A), B0 = positions(keep, B);
  r.witness.partition = {{"A", A0}, {"B", B0}};
  r.witness.note = "H(AB) <= H(A) + H(B)";
  add_term(r, 0, disjoint_union(A0, B0), 1.0, 0.0);
  add_term(r, 0, A0, 0.0, 1.0);
  add_term(r, 0, B0, 0.0, 1.0);
  settle(r);
  return r;
}

CheckReport check_lemma1(const StateTable& s, const std::vector<PartySet>& parts, const PartySet& gamma) {
  if (parts.empty()) throw std::invalid_argument("lemma 1: no parts");
  PartySet all;
  for (const auto& p : parts) {
    if (p.empty()) throw std::invalid_argument("lemma 1: empty part");
    all = disjoint_union(all, p);
  }
  require_parties(s, all, "lemma 1");
  require_parties(s, gamma, "lemma 1");
  const PartySet keep = disjoint_union(all, gamma);
  CheckReport r;
  r.name = "lemma1";
  r.witness.states.push_back(marginal(s, keep));
  const PartySet g0 = positions(keep, gamma);
  r.witness.partition["gamma"] = g0;
  const double n = static_cast<double>(parts.size());
  add_term(r, 0, disjoint_union(positions(keep, all), g0), 1.0, 0.0);
  add_term(r, 0, g0, -1.0, -n);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const PartySet p0 = positions(keep, parts[i]);
    r.witness.partition["A" + std::to_string(i)] = p0;
    add_term(r, 0, disjoint_union(p0, g0), 0.0, 1.0);
  }
  r.witness.note = "H(A_1...A_n|gamma) <= sum_i H(A_i|gamma)";
  settle(r);
  return r;
}

CheckReport check_lemma2(const StateTable& s, const PartySet& A, const PartySet& B) {
  if (A.empty()) throw std::invalid_argument("lemma 2: A is empty");
  require_parties(s, A, "lemma 2");
  require_parties(s, B, "lemma 2");
  const PartySet keep = disjoint_union(A, B);
  const StateTable joint = marginal(s, keep);
  const PartySet A0 = positions(keep, A), B0 = positions(keep, B);
  PartySet order = A0;
  order.insert(order.end(), B0.begin(), B0.end());
  const auto ordered = permute_parties(joint, order);
  const auto product = tensor(marginal(joint, A0), marginal(joint, B0));
  const double dev = max_abs_difference(ordered, product);
  if (dev > kTableTol) {
    throw std::invalid_argument("lemma 2 needs a product state across A|B (deviation " + std::to_string(dev) + ")");
  }
  CheckReport r;
  r.name = "lemma2";
  r.equality = true;
  r.witness.states.push_back(joint);
  r.witness.partition = {{"A", A0}, {"B", B0}};
  r.witness.note = "H(A|B) = H(A) on products";
  add_conditional(r, 0, A0, B0, 1.0, true);
  add_term(r, 0, A0, 0.0, 1.0);
  settle(r);
  return r;
}

CheckReport check_lemma3(const StateTable& s, const PartySet& X, const PartySet& Y) {
  if (X.empty()) throw std::invalid_argument("lemma 3: X is empty");
  require_parties(s, X, "lemma 3");
  require_parties(s, Y, "lemma 3");
  for (auto x : X)
    if (!s.system()[x].classical()) throw std::invalid_argument("lemma 3: party " + std::to_string(x) + " is not classical");
  const PartySet keep = disjoint_union(X, Y);
  CheckReport r;
  r.name = "lemma3";
  r.witness.states.push_back(marginal(s, keep));
  const PartySet X0 = positions(keep, X), Y0 = positions(keep, Y);
  r.witness.partition = {{"X", X0}, {"Y", Y0}};
  r.witness.note = "0 <= H(X|Y) for classical X";
  add_conditional(r, 0, X0, Y0, 1.0, false);
  settle(r);
  return r;
}

CheckReport check_lemma4(const Transcript& t) {
  if (t.state.party_count() == 0) throw std::invalid_argument("lemma 4: transcript missing");
  CheckReport r;
  r.name = "lemma4";
  r.lhs_constant = t.n - t.m;
  r.witness.states.push_back(t.state);
  const PartySet bx = sorted({t.message, t.bob});
  r.witness.partition = {{"a", t.inputs}, {"Bx", bx}};
  r.witness.note = "n - m <= H(a|Bx)";
  add_conditional(r, 0, t.inputs, bx, 1.0, false);
  settle(r);
  return r;
}

CheckReport check_lemma(const StateTable& s, int which, const LemmaParams& params) {
  switch (which) {
    case 1:
      return check_lemma1(s, params.parts, params.given);
    case 2:
    case 3:
      if (params.parts.size() != 1) throw std::invalid_argument("lemma " + std::to_string(which) + " takes one party set");
      return which == 2 ? check_lemma2(s, params.parts[0], params.given) : check_lemma3(s, params.parts[0], params.given);
    case 4:
      if (!params.transcript) throw std::invalid_argument("lemma 4 needs a game transcript");
      return check_lemma4(*params.transcript);
    default:
      throw std::invalid_argument("lemma must be 1, 2, 3 or 4");
  }
}

CheckReport reevaluate(const CheckReport& r) {
  CheckReport out = r;
  clear_entropy_cache();
  for (auto& t : out.witness.terms) {
    const auto v = entropy_of(out.witness.states.at(t.state), t.parties);
    t.bits = v.bits;
    t.argmin = t.parties.empty() ? "vacuum" : v.argmin().label;
  }
  settle(out);
  return out;
}

ProofChainTrace trace_theorem2_chain(const Transcript& t) {
  if (t.state.party_count() == 0) throw std::invalid_argument("trace: transcript missing");
  ProofChainTrace trace;
  const PartySet bx = sorted({t.message, t.bob});

  trace.steps.push_back(check_lemma4(t));

  std::vector<PartySet> parts;
  for (auto a : t.inputs) parts.push_back({a});
  auto l1 = check_lemma1(t.state, parts, bx);
  trace.steps.push_back(std::move(l1));

  CheckReport dpi;
  dpi.name = "dpi-to-guess";
  dpi.witness.states.push_back(t.state);
  dpi.witness.partition = {{"Bx", bx}};
  dpi.witness.note = "sum_i H(a_i|Bx) <= sum_i H(a_i|beta_i)";
  CheckReport info;
  info.name = "information";
  info.rhs_constant = t.m;
  info.witness.note = "sum_i I(a_i:beta_i) <= m";
  for (int i = 0; i < t.n; ++i) {
    const auto ai = t.inputs[static_cast<std::size_t>(i)];
    add_conditional(dpi, 0, {ai}, bx, 1.0, true);

    StateTable cur = t.state;
    std::vector<std::optional<std::size_t>> where(cur.party_count());
    for (std::size_t p = 0; p < where.size(); ++p) where[p] = p;
    std::string desc;
    for (const auto& step : bob_guess(t, i)) {
      const auto local = remap(step, where);
      desc += (desc.empty() ? "" : "; ") + describe(local, cur.system());
      auto next = apply_tracked(cur, local);
      for (auto& w : where)
        if (w) w = next.party_map[*w];
      cur = std::move(next.state);
    }
    const std::size_t a1 = *where[ai];
    const std::size_t beta = *where[std::min(t.message, t.bob)];
    dpi.witness.states.push_back(cur);
    info.witness.states.push_back(cur);
    dpi.witness.transformation += (i ? " | " : "") + desc;
    const std::size_t k = dpi.witness.states.size() - 1;
    add_conditional(dpi, k, {a1}, {beta}, 1.0, false);
    const std::size_t ki = info.witness.states.size() - 1;
    add_term(info, ki, {a1}, 1.0, 0.0);
    add_term(info, ki, {beta}, 1.0, 0.0);
    add_term(info, ki, sorted({a1, beta}), -1.0, 0.0);
    info.witness.partition["a" + std::to_string(i)] = {a1};
    info.witness.partition["beta" + std::to_string(i)] = {beta};
  }
  dpi.witness.transformation = "per i: " + dpi.witness.transformation;
  settle(dpi);
  settle(info);
  trace.I = info.lhs_bits;
  trace.steps.push_back(std::move(dpi));
  trace.steps.push_back(std::move(info));
  for (std::size_t i = 0; i < trace.steps.size(); ++i)
    if (trace.steps[i].verdict == Verdict::violated) {
      trace.first_failure = static_cast<int>(i);
      break;
    }
  return trace;
}

SearchKind parse_search_kind(const std::string& name) {
  if (name == "dpi") return SearchKind::dpi;
  if (name == "ssa") return SearchKind::ssa;
  if (name == "lemma1") return SearchKind::lemma1;
  if (name == "lemma3") return SearchKind::lemma3;
  if (name == "subadditivity") return SearchKind::subadditivity;
  throw std::invalid_argument("unknown inequality '" + name + "' (dpi, ssa, lemma1, lemma3, subadditivity)");
}

std::string to_string(SearchKind k) {
  switch (k) {
    case SearchKind::dpi:
      return "dpi";
    case SearchKind::ssa:
      return "ssa";
    case SearchKind::lemma1:
      return "lemma1";
    case SearchKind::lemma3:
      return "lemma3";
    case SearchKind::subadditivity:
      return "subadditivity";
  }
  return "?";
}

SystemType default_search_system(SearchKind k) {
  const PartyType bit{1, 2, ""}, gbit{2, 2, ""};
  switch (k) {
    case SearchKind::ssa:
    case SearchKind::lemma1:
      return SystemType({bit, bit, gbit});
    case SearchKind::dpi:
      return SystemType({bit, bit, bit});
    case SearchKind::lemma3:
      return SystemType({bit, gbit, gbit});
    case SearchKind::subadditivity:
      return gbit_pair();
  }
  return {};
}

namespace {

std::vector<double> random_column_map(std::mt19937_64& rng, std::size_t inputs, std::size_t outputs) {
  std::vector<double> map(inputs * outputs, 0.0);
  const bool deterministic = rng() % 2;
  for (std::size_t x = 0; x < inputs; ++x) {
    if (deterministic) {
      map[below(rng, outputs) * inputs + x] = 1.0;
    } else {
      const auto col = dirichlet(rng, outputs);
      for (std::size_t y = 0; y < outputs; ++y) map[y * inputs + x] = col[y];
    }
  }
  return map;
}

Transformation random_local_step(const StateTable& s, const PartySet& B, std::mt19937_64& rng) {
  PartySet classical, boxes;
  for (auto b : B) (s.system()[b].classical() ? classical : boxes).push_back(b);
  std::vector<int> kinds{0, 4};
  if (!classical.empty()) kinds.insert(kinds.end(), {1, 2});
  if (!boxes.empty()) kinds.push_back(3);
  switch (kinds[below(rng, kinds.size())]) {
    case 0: {
      PartySet d;
      for (auto b : B)
        if (rng() % 2) d.push_back(b);
      if (d.empty()) d.push_back(B[below(rng, B.size())]);
      return Discard{d};
    }
    case 1: {
      PartySet in;
      for (auto c : classical)
        if (rng() % 2) in.push_back(c);
      if (in.empty()) in.push_back(classical[below(rng, classical.size())]);
      std::size_t inputs = 1;
      for (auto c : in) inputs *= static_cast<std::size_t>(s.system()[c].outcomes);
      const int outputs = 1 + static_cast<int>(below(rng, 3));
      return ClassicalProcessing{in, outputs, random_column_map(rng, inputs, static_cast<std::size_t>(outputs)), "f"};
    }
    case 2:
      return CloneClassical{classical[below(rng, classical.size())]};
    case 3: {
      const auto b = boxes[below(rng, boxes.size())];
      return Wiring{b, static_cast<int>(below(rng, static_cast<std::size_t>(s.system()[b].settings)))};
    }
    default: {
      const auto p = dirichlet(rng, 2);
      return AddIndependent{gpt::classical(p).renamed({"R"})};
    }
  }
}

}  // namespace

CheckReport search_trial(SearchKind kind, const SystemType& system, std::uint64_t trial_seed) {
  std::mt19937_64 rng(trial_seed);
  const StateTable s = sample_search_state(system, rng);
  std::vector<std::size_t> order(system.size());
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  const std::size_t n = order.size();
  switch (kind) {
    case SearchKind::ssa: {
      if (n < 3) throw std::invalid_argument("ssa search needs at least 3 parties");
      PartySet A{order[0]}, C{order[1]}, D{order[2]};
      for (std::size_t i = 3; i < n; ++i) {
        switch (below(rng, 4)) {
          case 0: A.push_back(order[i]); break;
          case 1: C.push_back(order[i]); break;
          case 2: D.push_back(order[i]); break;
          default: break;
        }
      }
      return check_ssa(s, sorted(A), sorted(C), sorted(D));
    }
    case SearchKind::dpi: {
      if (n < 2) throw std::invalid_argument("dpi search needs at least 2 parties");
      PartySet A{order[0]}, B{order[1]};
      for (std::size_t i = 2; i < n; ++i) (rng() % 2 ? A : B).push_back(order[i]);
      A = sorted(A);
      B = sorted(B);
      return check_dpi(s, A, B, random_local_step(s, B, rng));
    }
    case SearchKind::lemma1: {
      if (n < 2) throw std::invalid_argument("lemma 1 search needs at least 2 parties");
      std::vector<PartySet> parts;
      for (std::size_t i = 0; i + 1 < n; ++i) parts.push_back({order[i]});
      return check_lemma1(s, parts, {order[n - 1]});
    }
    case SearchKind::lemma3: {
      PartySet cls;
      for (auto p : order)
        if (system[p].classical()) cls.push_back(p);
      if (cls.empty()) throw std::invalid_argument("lemma 3 search needs a classical party");
      const auto x = cls[0];
      PartySet Y;
      for (auto p : order)
        if (p != x && (rng() % 4 != 0)) Y.push_back(p);
      if (Y.empty() && n > 1) Y.push_back(order[0] == x ? order[1] : order[0]);
      return check_lemma3(s, {x}, sorted(Y));
    }
    case SearchKind::subadditivity: {
      if (n < 2) throw std::invalid_argument("subadditivity search needs at least 2 parties");
      const std::size_t cut = 1 + below(rng, n - 1);
      return check_subadditivity(s, sorted(PartySet(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cut))),
                                 sorted(PartySet(order.begin() + static_cast<std::ptrdiff_t>(cut), order.end())));
    }
  }
  throw std::invalid_argument("unknown search kind");
}

namespace {

unsigned thread_count(std::uint64_t trials) {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("GPT_ENTROPY_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
  }
  return static_cast<unsigned>(std::min<std::uint64_t>(n, std::max<std::uint64_t>(trials, 1)));
}

}  // namespace

SearchResult search_counterexamples(SearchKind kind, const SystemType& system, std::uint64_t trials,
                                    std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("search needs at least one trial");
  struct Best {
    bool set = false;
    double margin = 0.0;
    std::uint64_t trial = 0;
    CheckReport report;
    std::uint64_t violations = 0;
  };
  const unsigned workers = thread_count(trials);
  std::vector<Best> best(workers);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t t; (t = next.fetch_add(1)) < trials;) {
        auto r = search_trial(kind, system, seed ^ t);
        auto& b = best[w];
        if (r.verdict == Verdict::violated) ++b.violations;
        if (!b.set || r.margin > b.margin || (r.margin == b.margin && t < b.trial)) {
          b.set = true;
          b.margin = r.margin;
          b.trial = t;
          b.report = std::move(r);
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mu);
      if (!error) error = std::current_exception();
      next = trials;
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work, w);
  work(0);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);

  SearchResult out;
  out.trials = trials;
  const Best* winner = nullptr;
  for (const auto& b : best) {
    out.violations += b.violations;
    if (!b.set) continue;
    if (!winner || b.margin > winner->margin || (b.margin == winner->margin && b.trial < winner->trial)) winner = &b;
  }
  out.best = winner->report;
  out.best_trial = winner->trial;
  out.best_margin = winner->margin;
  return out;
}

}  // namespace gpt
