#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gpt/bell.hpp"
#include "gpt/entropy.hpp"
#include "gpt/icgame.hpp"
#include "gpt/inequalities.hpp"
#include "gpt/json_io.hpp"
#include "gpt/named_states.hpp"
#include "gpt/operations.hpp"
#include "gpt/quantum.hpp"
#include "paper_examples.hpp"

using namespace gpt;

namespace {

struct Run {
  bool json = false;
  std::uint64_t seed = 0;
  std::string command;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

json manifest(const Run& run) {
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - run.start).count();
  return {{"command", run.command},
          {"seed", run.seed},
          {"version", GPT_VERSION},
          {"tolerances", {{"table", kTableTol}, {"entropy", kEntropyTol}}},
          {"wall_time_s", wall}};
}

void emit_json(const Run& run, json body) {
  body["manifest"] = manifest(run);
  std::cout << body.dump(2) << '\n';
}

std::string fmt(double x, const char* text = "%.12g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, text, x);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, sep);)
    if (!item.empty()) out.push_back(item);
  return out;
}

StateTable load_state(const std::string& text) {
  if (!text.empty() && text[0] == '@') return read_state_file(text.substr(1));
  return build_named_state(text);
}

DensityMatrix load_density(const std::string& text) {
  if (text == "singlet") return singlet();
  if (text == "mixed" || text == "maximally-mixed") return maximally_mixed(4);
  if (text.empty() || text[0] != '@') throw std::invalid_argument("--rho takes singlet, mixed or @file.json");
  std::ifstream in(text.substr(1));
  if (!in) throw std::invalid_argument("cannot open " + text.substr(1));
  return density_from_json(json::parse(in));
}

MeasurementAngles parse_angles(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw std::invalid_argument("--angles needs four comma-separated radians");
  MeasurementAngles a;
  a.alice = {std::stod(parts[0]), std::stod(parts[1])};
  a.bob = {std::stod(parts[2]), std::stod(parts[3])};
  return a;
}

PartySet parse_parties(const SystemType& sys, const std::string& list) {
  PartySet out;
  for (const auto& name : split(list, ',')) out.push_back(sys.find(name));
  return out;
}

SystemType parse_system(const std::string& text) {
  std::vector<PartyType> parties;
  for (const auto& tok : split(text, ',')) {
    if (tok == "c" || tok == "bit") {
      parties.push_back({1, 2, ""});
    } else if (tok == "g" || tok == "gbit") {
      parties.push_back({2, 2, ""});
    } else if (auto colon = tok.find(':'); colon != std::string::npos) {
      parties.push_back({std::stoi(tok.substr(0, colon)), std::stoi(tok.substr(colon + 1)), ""});
    } else {
      throw std::invalid_argument("party type '" + tok + "' (use c, g or k:l)");
    }
  }
  return SystemType(parties);
}

std::string party_names(const SystemType& sys, const PartySet& ps) {
  std::string out;
  for (auto p : ps) out += (out.empty() ? "" : ",") + (sys[p].name.empty() ? std::to_string(p) : sys[p].name);
  return out.empty() ? "-" : out;
}

void print_report(const CheckReport& r) {
  std::cout << r.name << ": " << r.witness.note << '\n';
  std::printf("  lhs %-14s rhs %-14s margin %-14s verdict %s\n", fmt(r.lhs_bits).c_str(), fmt(r.rhs_bits).c_str(),
              fmt(r.margin).c_str(), to_string(r.verdict).c_str());
  if (!r.witness.transformation.empty()) std::cout << "  transformation: " << r.witness.transformation << '\n';
  for (const auto& t : r.witness.terms) {
    std::printf("  %-22s state %zu  %-14s coef lhs %-3s rhs %-3s argmin %s\n", t.expr.c_str(), t.state,
                fmt(t.bits).c_str(), fmt(t.lhs_coef, "%+g").c_str(), fmt(t.rhs_coef, "%+g").c_str(), t.argmin.c_str());
  }
}

json game_json(const GameResult& g) {
  json j{{"E", g.config.E},
         {"k", g.config.k},
         {"N", g.N},
         {"m", g.m},
         {"mode", g.config.mode == GameMode::analytic ? "analytic" : "montecarlo"},
         {"per_bit_success", g.per_bit_success},
         {"I", g.I},
         {"I_over_m", g.I_over_m},
         {"violates_ic", g.I > g.m + kEntropyTol}};
  if (g.config.mode == GameMode::montecarlo) {
    j["trials"] = g.config.trials;
    j["standard_error"] = g.standard_error;
  }
  if (g.transcript) {
    j["transcript"] = to_json(g.transcript->state);
    j["transcript_I"] = information_from_transcript(*g.transcript);
  }
  return j;
}

json chain_json(const ProofChainTrace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back(to_json(s, false));
  return {{"steps", steps},
          {"first_failure", t.first_failure < 0 ? json(nullptr) : json(t.steps[static_cast<std::size_t>(t.first_failure)].name)},
          {"I", t.I}};
}

}  // namespace

int main(int argc, char** argv) {
  Run run;
  for (int i = 0; i < argc; ++i) run.command += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Measurement entropy, entropic inequalities and CHSH for generalized probabilistic theories"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", run.json, "Emit JSON instead of tables");
  app.add_option("--seed", run.seed, "Seed for every random choice")->capture_default_str();

  std::string state_spec, rho_spec, angles_spec, a_spec, b_spec, c_spec, d_spec, mode = "auto";
  std::string ineq = "ssa", system_spec, discard_spec, wire_spec, clone_spec, resource = "isotropic";
  double E = 1.0;
  int k = 1, kmax = 12;
  std::uint64_t trials = 0;
  double emin = 0.6, emax = 0.9, step = 0.01;
  bool with_states = false;

  auto* entropy = app.add_subcommand("entropy", "Measurement entropy of a state or subsystem");
  entropy->add_option("--state", state_spec, "Named state or @file.json")->required();
  entropy->add_option("--parties", a_spec, "Comma-separated parties (default: all)");
  entropy->add_option("--mode", mode, "auto | adaptive | non-adaptive")->capture_default_str();

  auto* conditional = app.add_subcommand("conditional", "Conditional entropy H(A|B) = H(AB) - H(B)");
  conditional->add_option("--state", state_spec, "Named state or @file.json")->required();
  conditional->add_option("--A", a_spec, "Parties of A")->required();
  conditional->add_option("--B", b_spec, "Parties of B")->required();

  auto* chsh = app.add_subcommand("chsh", "CHSH value of a two-gbit table or an exported qubit pair");
  chsh->add_option("--state", state_spec, "Named state or @file.json");
  chsh->add_option("--rho", rho_spec, "singlet | mixed | @density.json");
  chsh->add_option("--angles", angles_spec, "thetaA0,thetaA1,thetaB0,thetaB1 (with --rho)");
  bool maximize = false;
  chsh->add_flag("--max", maximize, "Report classical and quantum maxima instead");

  auto* check = app.add_subcommand("check", "Evaluate one entropic inequality");
  check->add_option("--ineq", ineq, "ssa | dpi | conditioning | subadditivity | lemma1..lemma4 | chain")
      ->capture_default_str();
  check->add_option("--state", state_spec, "Named state or @file.json");
  check->add_option("--A", a_spec, "A (lemma 1: one part per party; lemma 3: X)");
  check->add_option("--B", b_spec, "B (lemma 1: gamma; lemma 3: Y)");
  check->add_option("--C", c_spec, "C for ssa");
  check->add_option("--D", d_spec, "D for ssa");
  check->add_option("--discard", discard_spec, "dpi: discard these parties of B");
  check->add_option("--wire", wire_spec, "dpi: measure PARTY:SETTING of B");
  check->add_option("--clone", clone_spec, "dpi: clone this classical party of B");
  check->add_option("--E", E, "lemma4/chain: isotropic box correlation")->capture_default_str();
  check->add_option("--resource", resource, "lemma4/chain: isotropic | classical")->capture_default_str();
  check->add_flag("--with-states", with_states, "Include witness tables in JSON");

  auto* search = app.add_subcommand("search", "Randomized counterexample search");
  search->add_option("--ineq", ineq, "dpi | ssa | lemma1 | lemma3 | subadditivity")->required();
  search->add_option("--trials", trials, "Number of trials")->default_val(1000);
  search->add_option("--system", system_spec, "Party types, e.g. c,c,g or 1:3,2:2");
  search->add_flag("--with-states", with_states, "Include witness tables in JSON");

  auto* icgame = app.add_subcommand("icgame", "Information causality game with van Dam's protocol");
  icgame->require_subcommand(0, 1);
  icgame->add_option("--E", E, "Box correlation")->capture_default_str();
  icgame->add_option("--k", k, "Nesting depth (N = 2^k)")->capture_default_str();
  icgame->add_option("--mode", mode, "analytic | montecarlo");
  icgame->add_option("--trials", trials, "Monte Carlo rounds")->default_val(100000);
  auto* sweep = icgame->add_subcommand("sweep", "Analytic I/m over an E grid (CSV)");
  sweep->add_option("--emin", emin)->capture_default_str();
  sweep->add_option("--emax", emax)->capture_default_str();
  sweep->add_option("--step", step)->capture_default_str();
  sweep->add_option("--kmax", kmax)->capture_default_str();

  auto* state = app.add_subcommand("state", "Print and validate a state table");
  state->add_option("--state", state_spec, "Named state or @file.json");
  state->add_option("--rho", rho_spec, "singlet | mixed | @density.json");
  state->add_option("--angles", angles_spec, "thetaA0,thetaA1,thetaB0,thetaB1 (with --rho)");

  auto* examples = app.add_subcommand("paper-examples", "Reproduce every landmark value in one run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*entropy) {
      const auto s = load_state(state_spec);
      const PartySet ps = a_spec.empty() ? complement({}, s.party_count()) : parse_parties(s.system(), a_spec);
      EnumerationMode m = EnumerationMode::automatic;
      if (mode == "adaptive") m = EnumerationMode::adaptive;
      else if (mode == "non-adaptive") m = EnumerationMode::non_adaptive;
      else if (mode != "auto") throw std::invalid_argument("--mode must be auto, adaptive or non-adaptive");
      PartySet sorted = ps;
      std::sort(sorted.begin(), sorted.end());
      const auto v = measurement_entropy(marginal(s, sorted), m);
      const std::string label = sorted.empty() ? "vacuum" : v.argmin().label;
      if (run.json) {
        emit_json(run, {{"bits", v.bits}, {"argmin_label", label}, {"n_measurements", v.n_measurements()},
                        {"parties", party_names(s.system(), sorted)}});
      } else {
        std::cout << "H(" << party_names(s.system(), sorted) << ") = " << fmt(v.bits) << " bits\n"
                  << "argmin " << label << " of " << v.n_measurements() << " fine-grained measurements\n";
      }
    } else if (*conditional) {
      const auto s = load_state(state_spec);
      const auto A = parse_parties(s.system(), a_spec), B = parse_parties(s.system(), b_spec);
      const auto AB = disjoint_union(A, B);
      const auto hab = entropy_of(s, AB), hb = entropy_of(s, B);
      const double bits = hab.bits - hb.bits;
      if (run.json) {
        emit_json(run, {{"bits", bits},
                        {"A", party_names(s.system(), A)},
                        {"B", party_names(s.system(), B)},
                        {"H_AB", {{"bits", hab.bits}, {"argmin_label", hab.argmin().label}}},
                        {"H_B", {{"bits", hb.bits}, {"argmin_label", B.empty() ? "vacuum" : hb.argmin().label}}}});
      } else {
        std::cout << "H(" << party_names(s.system(), A) << "|" << party_names(s.system(), B) << ") = " << fmt(bits)
                  << " bits  [H(AB) = " << fmt(hab.bits) << ", H(B) = " << fmt(hb.bits) << "]\n";
      }
    } else if (*chsh) {
      if (maximize) {
        const auto c = max_classical_chsh();
        const auto q = max_quantum_chsh(rho_spec.empty() ? singlet() : load_density(rho_spec));
        const auto& a = q.angles;
        if (run.json) {
          emit_json(run, {{"classical", {{"S", c.S}, {"strategy", c.strategy}}},
                          {"quantum",
                           {{"S", q.S},
                            {"grid_S", q.grid_S},
                            {"per_term", q.result.per_term},
                            {"angles", {{"alice", a.alice}, {"bob", a.bob}}}}},
                          {"tsirelson", kTsirelson}});
        } else {
          std::cout << "classical max S = " << fmt(c.S) << "  strategy a=(" << c.strategy[0] << "," << c.strategy[1]
                    << ") b=(" << c.strategy[2] << "," << c.strategy[3] << ")\n"
                    << "quantum max S   = " << fmt(q.S) << "  (1 degree grid " << fmt(q.grid_S) << ")\n"
                    << "angles A=(" << fmt(a.alice[0]) << ", " << fmt(a.alice[1]) << ") B=(" << fmt(a.bob[0]) << ", "
                    << fmt(a.bob[1]) << ")\n";
        }
        return 0;
      }
      StateTable s;
      if (!rho_spec.empty()) {
        if (angles_spec.empty()) throw std::invalid_argument("--rho needs --angles");
        s = qubit_pair_behavior(load_density(rho_spec), parse_angles(angles_spec));
      } else if (!state_spec.empty()) {
        s = load_state(state_spec);
      } else {
        throw std::invalid_argument("chsh needs --state, --rho or --max");
      }
      const auto r = chsh_value(s);
      const bool ok = tsirelson_check(r.S);
      if (run.json) {
        emit_json(run, {{"S", r.S}, {"per_term", r.per_term}, {"tsirelson", ok ? "pass" : "fail"}});
      } else {
        std::cout << "S = " << fmt(r.S) << "  [p(a=b|00) " << fmt(r.per_term[0]) << ", p(a=b|01) "
                  << fmt(r.per_term[1]) << ", p(a=b|10) " << fmt(r.per_term[2]) << ", p(a!=b|11) "
                  << fmt(r.per_term[3]) << "]\nTsirelson bound: " << (ok ? "pass" : "fail") << '\n';
      }
    } else if (*check) {
      if (ineq == "lemma4" || ineq == "chain") {
        const auto box = resource == "classical" ? classical_resource() : isotropic_box(E);
        if (resource != "classical" && resource != "isotropic") throw std::invalid_argument("--resource must be isotropic or classical");
        const auto t = van_dam_transcript(box);
        if (ineq == "lemma4") {
          const auto r = check_lemma4(t);
          if (run.json) emit_json(run, {{"report", to_json(r, with_states)}});
          else print_report(r);
        } else {
          const auto trace = trace_theorem2_chain(t);
          if (run.json) {
            emit_json(run, chain_json(trace));
          } else {
            for (const auto& s : trace.steps) print_report(s);
            std::cout << "I = " << fmt(trace.I) << ", m = " << t.m << "; first failing step: "
                      << (trace.first_failure < 0 ? "none" : trace.steps[static_cast<std::size_t>(trace.first_failure)].name)
                      << '\n';
          }
        }
        return 0;
      }
      if (state_spec.empty()) throw std::invalid_argument("check --ineq " + ineq + " needs --state");
      const auto s = load_state(state_spec);
      const auto& sys = s.system();
      const std::size_t n = s.party_count();
      const PartySet A = a_spec.empty() ? PartySet{0} : parse_parties(sys, a_spec);
      PartySet B = b_spec.empty() ? complement(A, n) : parse_parties(sys, b_spec);
      CheckReport r;
      if (ineq == "ssa") {
        const PartySet C = c_spec.empty() ? PartySet{n - 1} : parse_parties(sys, c_spec);
        const PartySet D = d_spec.empty() ? complement(disjoint_union(A, C), n) : parse_parties(sys, d_spec);
        r = check_ssa(s, A, C, D);
      } else if (ineq == "dpi") {
        Transformation t = Discard{};
        if (!wire_spec.empty()) {
          const auto parts = split(wire_spec, ':');
          if (parts.size() != 2) throw std::invalid_argument("--wire takes PARTY:SETTING");
          t = Wiring{sys.find(parts[0]), std::stoi(parts[1])};
        } else if (!clone_spec.empty()) {
          t = CloneClassical{sys.find(clone_spec)};
        } else if (!discard_spec.empty()) {
          t = Discard{parse_parties(sys, discard_spec)};
        } else {
          if (B.size() < 2) throw std::invalid_argument("dpi needs --discard, --wire or --clone");
          t = Discard{PartySet(B.begin() + 1, B.end())};
        }
        r = check_dpi(s, A, B, t);
      } else if (ineq == "conditioning") {
        r = check_conditioning(s, A, B);
      } else if (ineq == "subadditivity") {
        r = check_subadditivity(s, A, B);
      } else if (ineq == "lemma1") {
        std::vector<PartySet> parts;
        for (auto a : A) parts.push_back({a});
        r = check_lemma1(s, parts, B);
      } else if (ineq == "lemma2") {
        r = check_lemma2(s, A, B);
      } else if (ineq == "lemma3") {
        r = check_lemma3(s, A, B);
      } else {
        throw std::invalid_argument("unknown inequality '" + ineq + "'");
      }
      if (run.json) emit_json(run, {{"report", to_json(r, with_states)}});
      else print_report(r);
    } else if (*search) {
      const auto kind = parse_search_kind(ineq);
      const SystemType sys = system_spec.empty() ? default_search_system(kind) : parse_system(system_spec);
      const auto res = search_counterexamples(kind, sys, trials, run.seed);
      if (run.json) {
        emit_json(run, {{"inequality", to_string(kind)},
                        {"system", sys.describe()},
                        {"trials", res.trials},
                        {"violations", res.violations},
                        {"best_trial", res.best_trial},
                        {"best_trial_seed", run.seed ^ res.best_trial},
                        {"best", to_json(res.best, with_states)}});
      } else {
        std::cout << to_string(kind) << " on " << sys.describe() << ": " << res.violations << " violations in "
                  << res.trials << " trials; best margin " << fmt(res.best.margin) << " at trial " << res.best_trial
                  << '\n';
        print_report(res.best);
      }
    } else if (*icgame) {
      if (*sweep) {
        const auto sw = ic_threshold_sweep(e_grid(emin, emax, step), kmax);
        if (run.json) {
          json rows = json::array(), frontier = json::array();
          for (const auto& r : sw.rows)
            rows.push_back({{"E", r.E}, {"k", r.k}, {"success", r.success}, {"I", r.I}, {"I_over_m", r.I_over_m}});
          for (std::size_t i = 0; i < sw.frontier.size(); ++i)
            frontier.push_back({{"k", i + 1}, {"E", sw.frontier[i] ? json(*sw.frontier[i]) : json(nullptr)}});
          emit_json(run, {{"rows", rows}, {"frontier", frontier}});
        } else {
          std::cout << "E,k,success,I,I_over_m\n";
          for (const auto& r : sw.rows)
            std::cout << fmt(r.E) << ',' << r.k << ',' << fmt(r.success) << ',' << fmt(r.I) << ',' << fmt(r.I_over_m)
                      << '\n';
        }
        return 0;
      }
      GameConfig cfg{k, E};
      if (mode == "montecarlo") {
        cfg.mode = GameMode::montecarlo;
        cfg.trials = trials;
        cfg.seed = run.seed;
      } else if (mode != "analytic" && mode != "auto") {
        throw std::invalid_argument("--mode must be analytic or montecarlo");
      }
      const auto g = run_ic_game(cfg);
      if (run.json) {
        emit_json(run, game_json(g));
      } else {
        std::cout << "N = " << g.N << ", m = " << g.m << ", E = " << fmt(g.config.E) << ", k = " << g.config.k << '\n'
                  << "per-bit success " << fmt(g.per_bit_success);
        if (cfg.mode == GameMode::montecarlo) std::cout << " +- " << fmt(g.standard_error, "%.3g");
        std::cout << "\nI = " << fmt(g.I) << ", I/m = " << fmt(g.I_over_m)
                  << (g.I > g.m + kEntropyTol ? "  (exceeds m)" : "") << '\n';
      }
    } else if (*state) {
      StateTable s;
      if (!rho_spec.empty()) {
        if (angles_spec.empty()) throw std::invalid_argument("--rho needs --angles");
        s = qubit_pair_behavior(load_density(rho_spec), parse_angles(angles_spec));
      } else if (!state_spec.empty()) {
        s = load_state(state_spec);
      } else {
        throw std::invalid_argument("state needs --state or --rho");
      }
      const auto d = diagnose(s);
      if (run.json) {
        json out = to_json(s);
        out["diagnostics"] = {{"normalization", d.normalization}, {"range", d.range}, {"signalling", d.signalling},
                              {"valid", d.ok()}};
        emit_json(run, out);
      } else {
        std::cout << s.system().describe() << '\n';
        for (std::size_t j = 0; j < s.rows(); ++j) {
          std::cout << "  J=" << j << ":";
          for (double p : s.row(j)) std::cout << ' ' << fmt(p, "%.6g");
          std::cout << '\n';
        }
        std::cout << "normalization " << fmt(d.normalization, "%.3g") << ", signalling "
                  << fmt(d.signalling, "%.3g") << (d.ok() ? "  valid" : "  INVALID") << '\n';
      }
    } else if (*examples) {
      const auto rows = cli::run_paper_examples();
      bool all = true;
      for (const auto& r : rows) all = all && r.match;
      if (run.json) {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(cli::to_json(r));
        emit_json(run, {{"examples", arr}, {"all_match", all}});
      } else {
        std::printf("%-34s %-22s %-22s %s\n", "id", "expected", "actual", "ok");
        for (const auto& r : rows)
          std::printf("%-34s %-22s %-22s %s\n", r.id.c_str(), r.expected.dump().c_str(), r.actual.dump().c_str(),
                      r.match ? "yes" : "NO");
      }
      if (!all) {
        std::fprintf(stderr, "mismatches:\n%-34s %-22s %-22s %-12s %s\n", "id", "expected", "actual", "diff",
                     "tolerance");
        for (const auto& r : rows) {
          if (r.match) continue;
          const std::string diff = r.expected.is_number() && r.actual.is_number()
                                       ? fmt(r.actual.get<double>() - r.expected.get<double>(), "%.3g")
                                       : "-";
          std::fprintf(stderr, "%-34s %-22s %-22s %-12s %g\n", r.id.c_str(), r.expected.dump().c_str(),
                       r.actual.dump().c_str(), diff.c_str(), r.tolerance);
        }
        return 1;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
