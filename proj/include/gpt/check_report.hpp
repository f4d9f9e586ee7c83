#pragma once

#include <map>
#include <string>
#include <vector>

#include "gpt/state_table.hpp"

namespace gpt {

enum class Verdict { holds, tight, violated };

std::string to_string(Verdict v);

/// One measurement entropy H(parties) evaluated on witness state `state`.
/// The report sides are lhs = lhs_constant + Σ lhs_coef·bits and likewise rhs.
struct EntropyTerm {
  std::string expr;
  std::size_t state = 0;
  PartySet parties;
  double bits = 0.0;
  std::string argmin;
  double lhs_coef = 0.0;
  double rhs_coef = 0.0;
};

struct Witness {
  std::vector<StateTable> states;
  std::map<std::string, PartySet> partition;
  std::string transformation;
  std::string note;
  std::vector<EntropyTerm> terms;
};

/// Outcome of checking a claim `lhs <= rhs` (or `lhs == rhs` when
/// `equality`). `margin` is the amount of violation: lhs - rhs, or |lhs - rhs|
/// for equalities. Positive beyond `tolerance` means violated.
struct CheckReport {
  std::string name;
  double lhs_bits = 0.0;
  double rhs_bits = 0.0;
  double lhs_constant = 0.0;
  double rhs_constant = 0.0;
  bool equality = false;
  double margin = 0.0;
  Verdict verdict = Verdict::holds;
  double tolerance = kEntropyTol;
  Witness witness;

  bool passed() const { return verdict != Verdict::violated; }
};

Verdict classify(double margin, double tolerance, bool equality);

/// Fills lhs/rhs/margin/verdict from the witness terms and constants.
void settle(CheckReport& r);

}  // namespace gpt
