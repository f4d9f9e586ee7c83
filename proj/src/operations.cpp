#include "gpt/operations.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "gpt/named_states.hpp"

namespace gpt {

namespace {

/// Sums of P over the outcomes of the parties not in `keep`, one block per
/// setting vector of those parties: data[(rest_j * kept_rows + kept_j) * kept_cols + kept_i].
struct MarginalBlocks {
  SystemType kept;
  std::size_t rest_rows = 1;
  std::vector<double> data;

  std::size_t block_size() const { return kept.setting_count() * kept.outcome_count(); }
};

void check_party_set(const PartySet& parties, std::size_t n) {
  std::vector<bool> seen(n, false);
  for (auto p : parties) {
    if (p >= n) throw std::invalid_argument("party index " + std::to_string(p) + " out of range");
    if (seen[p]) throw std::invalid_argument("party index " + std::to_string(p) + " listed twice");
    seen[p] = true;
  }
}

MarginalBlocks marginal_blocks(const StateTable& s, const PartySet& keep) {
  const auto& sys = s.system();
  const std::size_t n = sys.size();
  check_party_set(keep, n);
  const PartySet rest = complement(keep, n);

  MarginalBlocks b;
  b.kept = sys.subsystem(keep);
  const SystemType rest_sys = sys.subsystem(rest);
  b.rest_rows = rest_sys.setting_count();

  const auto sr = sys.setting_radices();
  const auto orad = sys.outcome_radices();
  const auto kept_sr = b.kept.setting_radices();
  const auto kept_or = b.kept.outcome_radices();
  const auto rest_sr = rest_sys.setting_radices();

  std::vector<int> digits(n), kd(keep.size()), rd(rest.size());
  std::vector<std::size_t> kept_col(s.cols());
  for (std::size_t i = 0; i < s.cols(); ++i) {
    unflatten(i, orad, digits);
    for (std::size_t t = 0; t < keep.size(); ++t) kd[t] = digits[keep[t]];
    kept_col[i] = flatten(kd, kept_or);
  }

  const std::size_t kept_rows = b.kept.setting_count();
  const std::size_t kept_cols = b.kept.outcome_count();
  b.data.assign(b.rest_rows * kept_rows * kept_cols, 0.0);
  for (std::size_t j = 0; j < s.rows(); ++j) {
    unflatten(j, sr, digits);
    for (std::size_t t = 0; t < keep.size(); ++t) kd[t] = digits[keep[t]];
    for (std::size_t t = 0; t < rest.size(); ++t) rd[t] = digits[rest[t]];
    const std::size_t base = (flatten(rd, rest_sr) * kept_rows + flatten(kd, kept_sr)) * kept_cols;
    const auto row = s.row(j);
    for (std::size_t i = 0; i < row.size(); ++i) b.data[base + kept_col[i]] += row[i];
  }
  return b;
}

/// Largest deviation of any block from block 0, and which block.
std::pair<double, std::size_t> block_deviation(const MarginalBlocks& b) {
  const std::size_t size = b.block_size();
  double worst = 0.0;
  std::size_t worst_block = 0;
  for (std::size_t r = 1; r < b.rest_rows; ++r) {
    for (std::size_t i = 0; i < size; ++i) {
      const double d = std::abs(b.data[r * size + i] - b.data[i]);
      if (d > worst) {
        worst = d;
        worst_block = r;
      }
    }
  }
  return {worst, worst_block};
}

}  // namespace

PartySet complement(const PartySet& parties, std::size_t n) {
  PartySet out;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(parties.begin(), parties.end(), i) == parties.end()) out.push_back(i);
  }
  return out;
}

StateTable tensor(const StateTable& a, const StateTable& b) {
  StateTable out(concat(a.system(), b.system()),
                 std::vector<double>(a.rows() * b.rows() * a.cols() * b.cols(), 0.0));
  for (std::size_t ja = 0; ja < a.rows(); ++ja) {
    for (std::size_t jb = 0; jb < b.rows(); ++jb) {
      const std::size_t j = ja * b.rows() + jb;
      for (std::size_t ia = 0; ia < a.cols(); ++ia) {
        const double pa = a(ja, ia);
        for (std::size_t ib = 0; ib < b.cols(); ++ib) out(j, ia * b.cols() + ib) = pa * b(jb, ib);
      }
    }
  }
  return out;
}

StateTable marginal(const StateTable& s, const PartySet& keep) {
  auto blocks = marginal_blocks(s, keep);
  const auto [dev, block] = block_deviation(blocks);
  if (dev > kTableTol) {
    std::ostringstream os;
    os << "marginal depends on discarded settings (deviation " << dev << " at block " << block << ")";
    throw SignallingError(os.str());
  }
  blocks.data.resize(blocks.block_size());
  return StateTable(std::move(blocks.kept), std::move(blocks.data));
}

double outcome_probability(const StateTable& s, std::size_t party, int outcome, int setting) {
  if (party >= s.party_count()) throw std::invalid_argument("party index out of range");
  const auto& pt = s.system()[party];
  if (outcome < 0 || outcome >= pt.outcomes || setting < 0 || setting >= pt.settings) {
    throw std::invalid_argument("outcome/setting out of range for party " + std::to_string(party));
  }
  const auto m = marginal(s, {party});
  return m(static_cast<std::size_t>(setting), static_cast<std::size_t>(outcome));
}

StateTable conditional_marginal(const StateTable& s, std::size_t party, int outcome, int setting) {
  const double p = outcome_probability(s, party, outcome, setting);
  if (p <= kTableTol) {
    std::ostringstream os;
    os << "conditioning on outcome " << outcome << " of setting " << setting << " of party " << party
       << " which has probability " << p;
    throw ZeroProbabilityError(os.str());
  }
  const auto& sys = s.system();
  const PartySet rest = complement({party}, sys.size());
  SystemType out_sys = sys.subsystem(rest);
  std::vector<double> out(out_sys.setting_count() * out_sys.outcome_count(), 0.0);

  const auto sr = sys.setting_radices();
  const auto orad = sys.outcome_radices();
  const auto out_sr = out_sys.setting_radices();
  const auto out_or = out_sys.outcome_radices();
  std::vector<int> digits(sys.size()), od(rest.size());
  const std::size_t cols = out_sys.outcome_count();
  for (std::size_t j = 0; j < s.rows(); ++j) {
    unflatten(j, sr, digits);
    if (digits[party] != setting) continue;
    for (std::size_t t = 0; t < rest.size(); ++t) od[t] = digits[rest[t]];
    const std::size_t oj = flatten(od, out_sr);
    for (std::size_t i = 0; i < s.cols(); ++i) {
      unflatten(i, orad, digits);
      if (digits[party] != outcome) continue;
      for (std::size_t t = 0; t < rest.size(); ++t) od[t] = digits[rest[t]];
      out[oj * cols + flatten(od, out_or)] = s(j, i) / p;
    }
  }
  return StateTable(std::move(out_sys), std::move(out));
}

CheckReport check_no_signalling(const StateTable& s) {
  CheckReport r;
  r.name = "no_signalling";
  r.tolerance = kTableTol;
  const std::size_t n = s.party_count();
  double worst = 0.0;
  PartySet worst_kept;
  std::size_t worst_block = 0;
  for (std::size_t mask = 1; n > 1 && mask + 1 < (std::size_t{1} << n); ++mask) {
    PartySet keep;
    for (std::size_t t = 0; t < n; ++t) {
      if (mask & (std::size_t{1} << t)) keep.push_back(t);
    }
    const auto [dev, block] = block_deviation(marginal_blocks(s, keep));
    if (dev > worst) {
      worst = dev;
      worst_kept = keep;
      worst_block = block;
    }
  }
  r.lhs_bits = worst;
  r.rhs_bits = 0.0;
  r.margin = worst;
  r.verdict = worst > r.tolerance ? Verdict::violated : Verdict::holds;
  r.witness.partition["kept"] = worst_kept;
  r.witness.partition["settings"] = {0, worst_block};
  std::ostringstream os;
  os << "max |marginal(rest settings 0) - marginal(rest settings " << worst_block << ")| = " << worst;
  r.witness.note = os.str();
  return r;
}

StateTable permute_parties(const StateTable& s, std::span<const std::size_t> order) {
  if (order.size() != s.party_count()) throw std::invalid_argument("permutation must list every party");
  return marginal(s, PartySet(order.begin(), order.end()));
}

StateTable mixture(std::span<const double> weights, std::span<const StateTable> states) {
  if (weights.size() != states.size() || states.empty()) {
    throw std::invalid_argument("mixture needs one weight per state");
  }
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mixture weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > kTableTol) throw std::invalid_argument("mixture weights must sum to 1");
  std::vector<double> out(states[0].entries().size(), 0.0);
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (!states[k].system().same_shape(states[0].system())) {
      throw std::invalid_argument("mixture of tables on different systems");
    }
    const auto& e = states[k].entries();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += weights[k] * e[i];
  }
  return StateTable(states[0].system(), std::move(out));
}

StateTable clone_classical(const StateTable& s, std::size_t x) {
  if (x >= s.party_count()) throw std::invalid_argument("clone_classical: party index out of range");
  const auto& px = s.system()[x];
  if (!px.classical()) throw std::invalid_argument("clone_classical: party " + std::to_string(x) + " is not classical");

  const int l = px.outcomes;
  const StateTable joined = tensor(s, classical_pure(l, 0));
  auto parties = joined.system().parties();
  parties.back().name = px.name.empty() ? std::string{} : px.name + "'";
  SystemType out_sys(std::move(parties));
  std::vector<double> out(joined.entries().size(), 0.0);

  const auto orad = out_sys.outcome_radices();
  const std::size_t last = out_sys.size() - 1;
  std::vector<int> digits(out_sys.size());
  for (std::size_t j = 0; j < joined.rows(); ++j) {
    for (std::size_t i = 0; i < joined.cols(); ++i) {
      unflatten(i, orad, digits);
      digits[last] = (digits[x] + digits[last]) % l;
      out[j * joined.cols() + flatten(digits, orad)] += joined(j, i);
    }
  }
  return StateTable(std::move(out_sys), std::move(out));
}

}  // namespace gpt
