#pragma once

// The two hypotheses under which G is understood:
//   A: n >= 2, R has length >= 4 in <a> * <U b U^{-1}>, and a, b admissible;
//   B: n >= 2 and no letter of R has order 2.

#include <optional>
#include <string>
#include <vector>

#include "orp/gtg.hpp"

namespace orp {

enum class Hypothesis { A, B };

std::string_view hypothesisName(Hypothesis h);

struct Clause {
  std::string name;
  Decision holds = Decision::Undecided;
  std::string detail;
};

struct HypothesisCheck {
  std::vector<Clause> a;
  std::vector<Clause> b;
  bool aHolds() const;
  bool bHolds() const;
};

HypothesisCheck hypothesisClauses(const GtgDescription& d);

struct HypothesisTag {
  Hypothesis which = Hypothesis::B;  // A when it holds, otherwise B
  HypothesisCheck checks;
};

/// nullopt when neither hypothesis is established.
std::optional<HypothesisTag> checkHypotheses(const GtgDescription& d);

}  // namespace orp
