#include "gpt/json_io.hpp"

#include <fstream>
#include <sstream>

namespace gpt {

json to_json(const StateTable& s) {
  json parties = json::array();
  for (const auto& p : s.system().parties()) {
    json jp = {{"k", p.settings}, {"l", p.outcomes}};
    if (!p.name.empty()) jp["name"] = p.name;
    parties.push_back(std::move(jp));
  }
  json table = json::array();
  for (std::size_t j = 0; j < s.rows(); ++j) {
    const auto row = s.row(j);
    table.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return {{"parties", std::move(parties)}, {"table", std::move(table)}};
}

StateTable state_from_json(const json& j, double tol) {
  if (!j.is_object() || !j.contains("parties") || !j.contains("table")) {
    throw std::invalid_argument("state JSON needs \"parties\" and \"table\"");
  }
  std::vector<PartyType> parties;
  for (const auto& jp : j.at("parties")) {
    PartyType p{jp.at("k").get<int>(), jp.at("l").get<int>(), jp.value("name", std::string{})};
    parties.push_back(std::move(p));
  }
  SystemType sys(std::move(parties));
  const auto& table = j.at("table");
  if (!table.is_array() || table.size() != sys.setting_count()) {
    throw std::invalid_argument("state JSON: table needs " + std::to_string(sys.setting_count()) + " rows");
  }
  std::vector<double> entries;
  entries.reserve(sys.setting_count() * sys.outcome_count());
  for (const auto& row : table) {
    if (!row.is_array() || row.size() != sys.outcome_count()) {
      throw std::invalid_argument("state JSON: each row needs " + std::to_string(sys.outcome_count()) + " entries");
    }
    for (const auto& v : row) entries.push_back(v.get<double>());
  }
  StateTable s(std::move(sys), std::move(entries));
  const auto d = diagnose(s);
  if (!d.ok(tol)) {
    std::ostringstream os;
    os << "state JSON rejected: worst deviation " << d.worst() << " (normalization " << d.normalization
       << ", range " << d.range << ", no-signalling " << d.signalling << ")";
    throw std::invalid_argument(os.str());
  }
  return s;
}

StateTable read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file " + path);
  return state_from_json(json::parse(in));
}

json to_json(const CheckReport& r, bool include_states) {
  json terms = json::array();
  for (const auto& t : r.witness.terms) {
    terms.push_back({{"expr", t.expr},
                     {"state", t.state},
                     {"parties", t.parties},
                     {"bits", t.bits},
                     {"argmin", t.argmin},
                     {"lhs_coef", t.lhs_coef},
                     {"rhs_coef", t.rhs_coef}});
  }
  json witness = {{"partition", r.witness.partition},
                  {"transformation", r.witness.transformation},
                  {"note", r.witness.note},
                  {"terms", std::move(terms)}};
  if (include_states) {
    json states = json::array();
    for (const auto& s : r.witness.states) states.push_back(to_json(s));
    witness["states"] = std::move(states);
  }
  return {{"name", r.name},         {"lhs_bits", r.lhs_bits},   {"rhs_bits", r.rhs_bits},
          {"margin", r.margin},     {"verdict", to_string(r.verdict)}, {"tolerance", r.tolerance},
          {"equality", r.equality}, {"witness", std::move(witness)}};
}

}  // namespace gpt
