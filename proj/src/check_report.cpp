#include "gpt/check_report.hpp"

#include <cmath>

namespace gpt {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::tight:
      return "tight";
    case Verdict::violated:
      return "violated";
  }
  return "?";
}

Verdict classify(double margin, double tolerance, bool equality) {
  if (equality) return margin <= tolerance ? Verdict::tight : Verdict::violated;
  if (margin > tolerance) return Verdict::violated;
  if (margin >= -tolerance) return Verdict::tight;
  return Verdict::holds;
}

void settle(CheckReport& r) {
  double lhs = r.lhs_constant;
  double rhs = r.rhs_constant;
  for (const auto& t : r.witness.terms) {
    lhs += t.lhs_coef * t.bits;
    rhs += t.rhs_coef * t.bits;
  }
  r.lhs_bits = lhs;
  r.rhs_bits = rhs;
  r.margin = r.equality ? std::abs(lhs - rhs) : lhs - rhs;
  r.verdict = classify(r.margin, r.tolerance, r.equality);
}

}  // namespace gpt
