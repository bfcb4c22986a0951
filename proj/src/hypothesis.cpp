#include "orp/hypothesis.hpp"

#include <algorithm>

namespace orp {

std::string_view hypothesisName(Hypothesis h) { return h == Hypothesis::A ? "A" : "B"; }

namespace {

bool allYes(const std::vector<Clause>& cs) {
  return std::all_of(cs.begin(), cs.end(), [](const Clause& c) { return c.holds == Decision::Yes; });
}

Decision yesNo(bool b) { return b ? Decision::Yes : Decision::No; }

}  // namespace

bool HypothesisCheck::aHolds() const { return allYes(a); }
bool HypothesisCheck::bHolds() const { return allYes(b); }

HypothesisCheck hypothesisClauses(const GtgDescription& d) {
  HypothesisCheck out;
  const Clause power{"n >= 2", yesNo(d.n >= 2), "n = " + std::to_string(d.n)};
  out.a.push_back(power);
  out.a.push_back({"length >= 4 in <a>*<UbU^-1>", yesNo(2 * d.k() >= 4), "length " + std::to_string(2 * d.k())});
  const Decision adm = admissible(d.fp, d.a, d.b);
  out.a.push_back({"a, b admissible", adm, std::string(decisionName(adm))});

  out.b.push_back(power);
  const bool order2 = hasOrderTwoLetter(d.fp, relator(d));
  out.b.push_back({"no letter of order 2", yesNo(!order2), order2 ? "R has a letter of order 2" : "all orders != 2"});
  return out;
}

std::optional<HypothesisTag> checkHypotheses(const GtgDescription& d) {
  HypothesisTag tag{Hypothesis::A, hypothesisClauses(d)};
  if (tag.checks.aHolds()) return tag;
  if (tag.checks.bHolds()) {
    tag.which = Hypothesis::B;
    return tag;
  }
  return std::nullopt;
}

}  // namespace orp
