#include "gpt/named_states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gpt/operations.hpp"

namespace gpt {

namespace {

PartyType gbit(std::string name) { return PartyType{2, 2, std::move(name)}; }
PartyType cbit(std::string name) { return PartyType{1, 2, std::move(name)}; }

StateTable two_gbit_table(const auto& prob) {
  std::vector<double> e(16, 0.0);
  for (int j = 0; j < 2; ++j)
    for (int jp = 0; jp < 2; ++jp)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) e[(j * 2 + jp) * 4 + a * 2 + b] = prob(a, b, j, jp);
  return StateTable(gbit_pair(), std::move(e));
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument("bad number '" + item + "'");
  }
  return out;
}

}  // namespace

SystemType gbit_pair() { return SystemType({gbit("A"), gbit("B")}); }

StateTable pr_variant(int alpha, int beta, int gamma) {
  return two_gbit_table([=](int a, int b, int j, int jp) {
    return ((a ^ b) == ((j & jp) ^ (alpha & j) ^ (beta & jp) ^ gamma)) ? 0.5 : 0.0;
  });
}

StateTable pr_box() { return pr_variant(0, 0, 0); }

StateTable isotropic_box(double correlation) {
  if (!(correlation >= 0.0 && correlation <= 1.0)) {
    throw std::invalid_argument("isotropic box correlation must lie in [0, 1]");
  }
  const double hit = (1.0 + correlation) / 4.0;
  const double miss = (1.0 - correlation) / 4.0;
  return two_gbit_table([=](int a, int b, int j, int jp) { return (a ^ b) == (j & jp) ? hit : miss; });
}

StateTable deterministic_box(int a0, int a1, int b0, int b1) {
  return two_gbit_table([=](int a, int b, int j, int jp) {
    return (a == (j ? a1 : a0) && b == (jp ? b1 : b0)) ? 1.0 : 0.0;
  });
}

StateTable gbit_vertex(int v) {
  if (v < 0 || v > 3) throw std::invalid_argument("gbit vertex index must be 0..3");
  const int out0 = v >> 1, out1 = v & 1;
  return StateTable(SystemType({gbit("Z")}), {out0 == 0 ? 1.0 : 0.0, out0 == 1 ? 1.0 : 0.0,
                                              out1 == 0 ? 1.0 : 0.0, out1 == 1 ? 1.0 : 0.0});
}

StateTable classical(std::span<const double> dist, std::vector<int> shape) {
  if (shape.empty()) shape.push_back(static_cast<int>(dist.size()));
  std::vector<PartyType> parties;
  for (std::size_t t = 0; t < shape.size(); ++t) parties.push_back(PartyType{1, shape[t], "X" + std::to_string(t)});
  if (shape.size() == 1) parties[0].name = "X";
  SystemType sys(std::move(parties));
  if (dist.size() != sys.outcome_count()) throw std::invalid_argument("classical: distribution size does not match shape");
  double total = 0.0;
  for (double p : dist) {
    if (!(p >= 0.0)) throw std::invalid_argument("classical: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > kTableTol) throw std::invalid_argument("classical: distribution does not sum to 1");
  return StateTable(std::move(sys), std::vector<double>(dist.begin(), dist.end()));
}

StateTable classical_pure(int outcomes, int outcome) {
  std::vector<double> e(static_cast<std::size_t>(outcomes), 0.0);
  e.at(static_cast<std::size_t>(outcome)) = 1.0;
  return StateTable(SystemType({PartyType{1, outcomes, ""}}), std::move(e));
}

StateTable ssa_example() {
  SystemType sys({cbit("x0"), cbit("x1"), gbit("Z")});
  std::vector<double> e(sys.setting_count() * sys.outcome_count(), 0.0);
  // settings index = Z's setting; outcomes (x0, x1, z) row-major.
  for (int j = 0; j < 2; ++j)
    for (int x0 = 0; x0 < 2; ++x0)
      for (int x1 = 0; x1 < 2; ++x1) {
        const int z = j == 0 ? x0 : x1;
        e[static_cast<std::size_t>(j) * 8 + static_cast<std::size_t>(x0 * 4 + x1 * 2 + z)] = 0.25;
      }
  return StateTable(std::move(sys), std::move(e));
}

StateTable uniform_noise(const SystemType& system) {
  return StateTable(system, std::vector<double>(system.setting_count() * system.outcome_count(),
                                                1.0 / static_cast<double>(system.outcome_count())));
}

StateTable uniform_noise() { return uniform_noise(gbit_pair()); }

StateTable build_named_state(const std::string& text) {
  std::string name = text, arg;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    name = text.substr(0, colon);
    arg = text.substr(colon + 1);
  }
  std::replace(name.begin(), name.end(), '-', '_');
  auto need_arg = [&] {
    if (arg.empty()) throw std::invalid_argument("state '" + name + "' needs a parameter (name:value)");
  };
  if (name == "pr" || name == "pr_box") return pr_box();
  if (name == "isotropic" || name == "isotropic_box") {
    need_arg();
    return isotropic_box(parse_list(arg).at(0));
  }
  if (name == "gbit_vertex") {
    need_arg();
    return gbit_vertex(static_cast<int>(parse_list(arg).at(0)));
  }
  if (name == "classical") {
    need_arg();
    const auto dist = parse_list(arg);
    return classical(dist);
  }
  if (name == "ssa_example" || name == "ssa") return ssa_example();
  if (name == "noise" || name == "uniform_noise") return uniform_noise();
  if (name == "uniform_gbit") return uniform_noise(SystemType({gbit("Z")}));
  throw std::invalid_argument("unknown state '" + text + "'");
}

}  // namespace gpt
