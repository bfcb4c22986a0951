#pragma once

// Bounded word problem for G = (G1 * G2) / N(R^n) together with the subword and
// injectivity checks built on it.
//
// The search rewrites w by subword reduction: when a cyclic subword w1 of w and a letter g
// make w1 g a word of H-form that is trivial in H, w1 equals g^{-1} in G and w is replaced by
// the cyclic reduction of g^{-1} w2. Every rewrite is an equality in G and shortens w, so the
// search only stops at a word it can decide outright:
//   - the empty word (TRIVIAL);
//   - a single letter (NONTRIVIAL, the factors embed);
//   - a word of H-form (decided by the H coset table, H embeds).
// TRIVIAL answers come with a picture made of one clique per rewrite.

#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orp/gtg.hpp"
#include "orp/hypothesis.hpp"
#include "orp/pictures.hpp"
#include "orp/triangle.hpp"

namespace orp {

struct SearchBudget {
  std::size_t maxCliques = 64;      // rewrites along one branch
  std::size_t maxLabelLength = 0;   // longest clique label; 0 means l (m + 6 f(m)), m = ℓ(w)
  std::size_t maxGraphs = 200000;   // words visited
  std::chrono::milliseconds timeLimit{60000};
  double isoperimetricC = 1.0;      // f(m) = C m^2

  std::size_t labelBound(const GtgDescription& d, std::size_t m) const;
};

enum class Verdict { Trivial, Nontrivial, Inconclusive };

std::string_view verdictName(Verdict v);

struct Oracles {
  CosetTable h;
  std::optional<HypothesisTag> tag;
  bool maximal = false;
};

/// Hypothesis check, refinement check and the H coset table.
Oracles makeOracles(const GtgDescription& d, std::size_t maxCosets = 100000);

struct RewriteStep {
  FpWord before;      // the word being rewritten, as a linear word
  std::size_t start = 0;
  std::size_t length = 0;  // w1 = cyclic subword (start, length) of before
  FpLetter g;
  FpWord after;       // reduced g^{-1} w2, read from its first surviving letter
};

struct SolveResult {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;              // why it was decided, or which cap stopped the search
  std::string cap;                 // "maxGraphs", "maxCliques", "maxLabelLength", "timeLimit", "oracle", "exhausted" or ""
  FpWord reduced;                  // w cyclically reduced
  std::vector<RewriteStep> steps;  // the branch that decided
  std::optional<Picture> certificate;
  std::size_t wordsVisited = 0;
  std::size_t labelBound = 0;
  double seconds = 0;
};

/// Throws HypothesisFail without a hypothesis tag and NotMaximal when d has a refinement.
SolveResult boundedWordProblem(const GtgDescription& d, const FpWord& w, const SearchBudget& budget,
                               const Oracles& oracles);

struct WeinbaumReport {
  SolveResult first, second;
  Verdict verdict = Verdict::Inconclusive;  // Nontrivial is a pass, Trivial a violation
  bool pass() const { return verdict == Verdict::Nontrivial; }
};

/// Throws BadSplit unless w1 w2 is a cyclic permutation of R^n with both parts nonempty.
WeinbaumReport weinbaumCheck(const GtgDescription& d, const FpWord& w1, const FpWord& w2, const SearchBudget& budget,
                             const Oracles& oracles);

/// Verdicts for R^m, 0 < m < n; all should be Nontrivial.
std::vector<SolveResult> relatorOrderCheck(const GtgDescription& d, const SearchBudget& budget, const Oracles& oracles);

struct ProbeItem {
  std::string what;
  FpWord word;
  Verdict verdict = Verdict::Inconclusive;
};

struct FreiheitssatzReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;  // identities and H-words trivial in H
  std::vector<ProbeItem> inconclusive;
  std::vector<ProbeItem> violations;  // reported TRIVIAL
  bool pass() const { return violations.empty() && inconclusive.empty(); }
};

/// Nonidentity factor elements (powers up to maxLen for infinite cyclic factors) and syllable
/// words of H with at most maxLen letters, each expected NONTRIVIAL in G.
FreiheitssatzReport freiheitssatzProbe(const GtgDescription& d, std::size_t maxLen, const SearchBudget& budget,
                                       const Oracles& oracles);

/// The image of an H-word prod x^alpha y^beta in G, i.e. prod a^alpha U b^beta U^{-1}, reduced.
FpWord hWordImage(const GtgDescription& d, const std::vector<ExpPair>& exps);

}  // namespace orp
