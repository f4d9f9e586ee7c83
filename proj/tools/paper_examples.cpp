#include "paper_examples.hpp"

#include <cmath>

#include "gpt/bell.hpp"
#include "gpt/entropy.hpp"
#include "gpt/icgame.hpp"
#include "gpt/inequalities.hpp"
#include "gpt/named_states.hpp"

namespace gpt::cli {

namespace {

class Book {
 public:
  void number(std::string id, std::string source, std::string quantity, double expected, double actual, double tol) {
    Example e{std::move(id), std::move(source), std::move(quantity), expected, actual, tol, false};
    e.match = std::isfinite(actual) && std::abs(actual - expected) <= tol;
    rows_.push_back(std::move(e));
  }
  void label(std::string id, std::string source, std::string quantity, const std::string& expected,
             const std::string& actual) {
    rows_.push_back(Example{std::move(id), std::move(source), std::move(quantity), expected, actual, 0.0,
                            expected == actual});
  }
  std::vector<Example> take() { return std::move(rows_); }

 private:
  std::vector<Example> rows_;
};

}  // namespace

std::vector<Example> run_paper_examples() {
  Book b;
  const double root2 = std::sqrt(2.0);

  {
    const char* src = "box-world SSA counterexample: H(x0|x1Z)=1 whereas H(x0|Z)=0";
    const auto s = ssa_example();
    b.number("ssa.H(x0|x1Z)", src, "conditional entropy", 1.0, conditional_entropy(s, {0}, {1, 2}), kEntropyTol);
    b.number("ssa.H(x0|Z)", src, "conditional entropy", 0.0, conditional_entropy(s, {0}, {2}), kEntropyTol);
    const auto r = check_ssa(s, {0}, {2}, {1});
    b.label("ssa.verdict", src, "check_ssa verdict", "violated", to_string(r.verdict));
    b.number("ssa.margin", src, "check_ssa margin", 1.0, r.margin, kEntropyTol);
  }
  {
    b.number("chsh.pr_box", "PR box: designed to have S=0 or 4", "S", 4.0, chsh_value(pr_box()).S, 0.0);
    b.number("chsh.isotropic", "Tsirelson bound 2+sqrt2 reached by the isotropic box at E=1/sqrt2", "S", 2 + root2,
             chsh_value(isotropic_box(1 / root2)).S, 1e-9);
    b.number("chsh.classical_max", "local deterministic strategies", "max S", 3.0, max_classical_chsh().S, 0.0);
    b.number("chsh.quantum_max", "Tsirelson bound: quantum S <= 2+sqrt2", "max S", 2 + root2, max_quantum_chsh().S,
             1e-6);
  }
  {
    const char* src = "information causality implies Tsirelson's bound";
    const auto sweep = ic_threshold_sweep(e_grid(0.60, 0.90, 0.01), 12);
    double last_ok = -1.0, first_bad = 2.0;
    for (std::size_t i = 0; i < sweep.grid.size(); ++i) {
      if (sweep.exceeds[i]) first_bad = std::min(first_bad, sweep.grid[i]);
      else last_ok = std::max(last_ok, sweep.grid[i]);
    }
    b.number("ic.largest_E_without_excess", src, "grid E, k <= 12", 0.71, last_ok, 1e-12);
    b.number("ic.smallest_E_with_excess", src, "grid E, k <= 12", 0.72, first_bad, 1e-12);
    b.label("ic.frontier_brackets_1/sqrt2", src, "last_ok < 1/sqrt2 + 0.01 and first_bad > 1/sqrt2", "true",
            last_ok < 1 / root2 + 0.01 && first_bad > 1 / root2 ? "true" : "false");
    b.number("ic.I(E=1,k=1)", "PR boxes make information causality fail", "I", 2.0,
             run_ic_game({1, 1.0}).I, 1e-12);
    b.number("ic.I(E=1/sqrt2,k=1)", "quantum strategy, success cos^2(pi/8)", "I", 2 * (1 - binary_entropy(std::pow(std::cos(M_PI / 8), 2))),
             run_ic_game({1, 1 / root2}).I, 1e-6);
  }
  {
    const char* src = "proof chain: information causality from DPI and COND";
    const auto pr = trace_theorem2_chain(van_dam_transcript(pr_box()));
    const std::vector<std::string> want{"tight", "violated", "tight", "violated"};
    for (std::size_t i = 0; i < pr.steps.size(); ++i) {
      b.label("chain.pr." + pr.steps[i].name, src, "verdict (E=1, n=2, m=1)", want[i], to_string(pr.steps[i].verdict));
    }
    b.number("chain.pr.lemma4.H(a|Bx)", src, "rhs bits", 1.0, pr.steps[0].rhs_bits, kEntropyTol);
    b.number("chain.pr.lemma1.H(a|Bx)", src, "lhs bits", 1.0, pr.steps[1].lhs_bits, kEntropyTol);
    b.number("chain.pr.lemma1.sum_H(ai|Bx)", src, "rhs bits", 0.0, pr.steps[1].rhs_bits, kEntropyTol);
    b.number("chain.pr.I", src, "I", 2.0, pr.I, kEntropyTol);
    b.label("chain.pr.first_failure", src, "first failing step", "lemma1",
            pr.first_failure < 0 ? "none" : pr.steps[static_cast<std::size_t>(pr.first_failure)].name);
    const auto cl = trace_theorem2_chain(van_dam_transcript(classical_resource()));
    b.label("chain.classical.first_failure", src, "first failing step (shared randomness)", "none",
            cl.first_failure < 0 ? "none" : cl.steps[static_cast<std::size_t>(cl.first_failure)].name);
    b.number("chain.classical.I", src, "I", 1.0, cl.I, kEntropyTol);
  }
  return b.take();
}

nlohmann::json to_json(const Example& e) {
  return {{"id", e.id},           {"source", e.source},       {"quantity", e.quantity}, {"expected", e.expected},
          {"actual", e.actual},   {"tolerance", e.tolerance}, {"match", e.match}};
}

}  // namespace gpt::cli
