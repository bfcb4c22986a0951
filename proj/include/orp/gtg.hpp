#pragma once

// Generalised-triangle-group descriptions of a relator
//   R = prod_i a^{alpha_i} U b^{beta_i} U^{-1}
// and the combinatorics built on them: special letters, the ~ classes,
// virtual periods and refinement.

#include <optional>
#include <string>
#include <vector>

#include "orp/free_product.hpp"

namespace orp {

struct ExpPair {
  long long alpha = 1;
  long long beta = 1;
  friend auto operator<=>(const ExpPair&, const ExpPair&) = default;
};

struct GtgDescription {
  FreeProduct fp;
  FpLetter a;
  FpLetter b;
  FpWord U;
  std::vector<ExpPair> exps;
  int n = 2;

  Order p() const { return fp.order(a); }
  Order q() const { return fp.order(b); }
  /// l = ℓ(a U b U^{-1}).
  std::size_t l() const { return 2 + 2 * U.size(); }
  std::size_t half() const { return 1 + U.size(); }
  std::size_t k() const { return exps.size(); }
};

/// Throws InvalidDescription unless the description is well formed and R is cyclically reduced.
void validate(const GtgDescription& d);

FpWord conjugatePair(const GtgDescription& d);  // a U b U^{-1}
FpWord relator(const GtgDescription& d);        // R
FpWord label(const GtgDescription& d);          // R^n, the label of a positive vertex

/// Positions j of R^n with j ≡ 0 mod l/2.
std::vector<std::size_t> specialPositions(const GtgDescription& d);

/// Canonical representative of the ~ class of x: powers of a collapse to a, powers of b to b,
/// and the two classes merge when <a> and <b> meet nontrivially.
FpLetter simClass(const GtgDescription& d, const FpLetter& x);
bool simEqual(const GtgDescription& d, const FpLetter& x, const FpLetter& y);

enum class VpTag { Equal, PowersOfA, PowersOfB, PowersOfRoot };

std::string_view tagName(VpTag t);

/// Tags for positions i = start .. start + length - 1 - mu of a cyclic subword of R^n.
struct VirtualPeriodWitness {
  std::size_t mu = 0;
  Segment segment;
  std::vector<VpTag> tags;
};

/// Segments here are cyclic subwords of label(d), start taken modulo ℓ(R^n).
std::optional<VirtualPeriodWitness> virtualPeriodCheck(const GtgDescription& d, const Segment& seg, std::size_t mu);

/// Re-checks every tag against its clause; shares no code with virtualPeriodCheck's search.
bool validateWitness(const GtgDescription& d, const VirtualPeriodWitness& w);

enum class CombineStatus { Ok, NotApplicable, PreconditionFailed };

struct CombineOutcome {
  CombineStatus status = CombineStatus::PreconditionFailed;
  std::optional<VirtualPeriodWitness> witness;
};

/// Virtual period gcd(mu, nu) for the union of two overlapping virtually periodic segments.
CombineOutcome combineVirtualPeriods(const GtgDescription& d, const Segment& w1, std::size_t mu, const Segment& w2,
                                     std::size_t nu);

struct Refinement {
  GtgDescription description;
  std::string source;  // "conjugate-pair" or "virtual-period"
};

struct RefinementReport {
  std::optional<Refinement> refinement;
  bool admissibilitySkipped = false;  // conjugate-pair search needs admissible(a, b) == Yes
  std::size_t candidatesTried = 0;
};

/// Lexicographic size (l, ℓ(R'')) where ℓ(R'') counts syllables a'^e and U' b'^f U'^{-1}.
std::pair<std::size_t, std::size_t> refinementMeasure(const GtgDescription& d);

RefinementReport detectRefinement(const GtgDescription& d);

/// If R parses as prod a'^e U' b'^f U'^{-1} and <a', U'b'U'^{-1}> contains a and UbU^{-1},
/// returns the corresponding description.
std::optional<GtgDescription> tryRefineWith(const GtgDescription& d, const FpLetter& a2, const FpWord& u2,
                                            const FpLetter& b2);

/// Every description visited, starting with d and ending at one with no detectable refinement.
std::vector<GtgDescription> refinementChain(const GtgDescription& d);
GtgDescription maximalRefinement(const GtgDescription& d);

/// Reflection j -> -j mod l of a segment lying within one period of the label.
Segment mirrorImage(const GtgDescription& d, const Segment& seg);

/// A rotation of a cyclic word reading prod a^{alpha_i} U b^{beta_i} U^{-1}.
struct FormParse {
  std::size_t offset = 0;  // rotate(w, offset) parses
  std::vector<ExpPair> exps;
};

/// Least such rotation of w, or nullopt. Exponents are taken in 1..order-1 for finite orders.
std::optional<FormParse> parseForm(const GtgDescription& d, const FpWord& w);

std::string format(const GtgDescription& d);

}  // namespace orp
