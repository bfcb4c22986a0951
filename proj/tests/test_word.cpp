#include <random>
#include <set>

#include "doctest.h"
#include "orp/word.hpp"

using namespace orp;

namespace {

// Letters as chars; uppercase is the involute of lowercase, 't' and 'u' are self-inverse.
char inv(char c) {
  if (c == 't' || c == 'u') return c;
  return std::islower(static_cast<unsigned char>(c)) ? static_cast<char>(std::toupper(c))
                                                     : static_cast<char>(std::tolower(c));
}

std::vector<char> W(const std::string& s) { return {s.begin(), s.end()}; }

// Straight from the definition, independent of the library scanner.
std::set<std::size_t> brutePeriods(const std::vector<char>& w) {
  std::set<std::size_t> out;
  for (std::size_t g = 1; g <= w.size(); ++g) {
    bool ok = true;
    for (std::size_t i = 0; i + g < w.size(); ++i) ok = ok && w[i] == w[i + g];
    if (ok) out.insert(g);
  }
  return out;
}

std::vector<char> randomWord(std::mt19937& rng, const std::string& letters, std::size_t len) {
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::vector<char> w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(letters[pick(rng)]);
  return w;
}

}  // namespace

TEST_CASE("alphabet involution respects orders") {
  Alphabet A;
  const Symbol a = A.addPair("a", "a'", Order::finite(3));
  const Symbol t = A.addSelfInverse("t");
  CHECK(A.inverse(A.inverse(a)) == a);
  CHECK(A.order(A.inverse(a)) == Order::finite(3));
  CHECK(A.inverse(t) == t);
  CHECK(A.order(t).is(2));
  CHECK_THROWS_AS(A.addPair("s", "s'", Order::finite(2)), Error);
  CHECK_THROWS_AS(A.addSelfInverse("a"), Error);
  CHECK(A.format({a, t, A.inverse(a)}) == "a t a'");
  CHECK(*A.find("a'") == A.inverse(a));
}

TEST_CASE("involute") {
  CHECK(involute(std::vector<char>{}, inv).empty());
  CHECK(involute(W("a"), inv) == W("A"));
  CHECK(involute(W("ab"), inv) == W("BA"));
  std::mt19937 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto w = randomWord(rng, "abABt", trial % 13);
    CHECK(involute(involute(w, inv), inv) == w);
  }
}

TEST_CASE("periods") {
  CHECK(periods(W("xyxyxy")) == std::vector<std::size_t>{2, 4, 6});
  CHECK(periods(W("xxxx")) == std::vector<std::size_t>{1, 2, 3, 4});
  CHECK(periods(W("xyz")) == std::vector<std::size_t>{3});
  CHECK_THROWS_AS(periods(std::vector<char>{}), Error);
  CHECK(minimalPeriod(W("abaab")) == 3);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    auto w = randomWord(rng, "xy", 1 + trial % 16);
    const auto got = periods(w);
    CHECK(std::set<std::size_t>(got.begin(), got.end()) == brutePeriods(w));
  }
}

TEST_CASE("border period") {
  CHECK(borderPeriod(W("xyx"), Segment{0, 1}) == 2);
  CHECK(brutePeriods(W("xyx")).contains(2));
  CHECK(borderPeriod(W("xx"), Segment{0, 1}) == 1);
  CHECK_THROWS_AS(borderPeriod(W("xy"), Segment{1, 1}), Error);
  try {
    borderPeriod(W("xy"), Segment{1, 1});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotABorder);
  }
}

TEST_CASE("Fine-Wilf") {
  CHECK(fineWilf(W("xxxxx"), 2, 3) == std::optional<std::size_t>(1));
  const auto w6 = W("xyxzxy");  // periods 4 and 6 only
  REQUIRE(brutePeriods(w6).contains(4));
  CHECK_FALSE(fineWilf(w6, 6, 4).has_value());
  try {
    fineWilf(W("xyz"), 2, 3);
    FAIL("expected NOT_A_PERIOD");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotAPeriod);
  }

  // Every binary word up to length 12.
  for (std::size_t len = 1; len <= 12; ++len) {
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
      std::vector<char> w;
      for (std::size_t i = 0; i < len; ++i) w.push_back((mask >> i) & 1 ? 'y' : 'x');
      const auto ps = brutePeriods(w);
      for (auto g : ps)
        for (auto r : ps) {
          const auto res = fineWilf(w, g, r);
          const std::size_t d = std::gcd(g, r);
          if (len + d >= g + r) {
            REQUIRE(res.has_value());
            CHECK(ps.contains(d));
          } else {
            CHECK_FALSE(res.has_value());
          }
        }
    }
  }
}

TEST_CASE("overlap periods") {
  const auto w = W("xyxyxyx");
  CHECK(overlapPeriods(w, Segment{0, 6}, 2, Segment{2, 5}, 2) == std::optional<std::size_t>(2));
  CHECK(overlapPeriods(w, Segment{0, 7}, 2, Segment{0, 7}, 2) == fineWilf(w, 2, 2));
  CHECK_FALSE(overlapPeriods(W("xyxyx"), Segment{0, 3}, 2, Segment{2, 3}, 2).has_value());
  CHECK_THROWS_AS(overlapPeriods(w, Segment{0, 3}, 2, Segment{4, 3}, 2), Error);
}

TEST_CASE("proper powers agree with divisor periods") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 400; ++trial) {
    auto w = randomWord(rng, "xy", 1 + trial % 12);
    if (trial % 3 == 0) {
      auto u = w;
      for (int r = 0; r < 2; ++r) w.insert(w.end(), u.begin(), u.end());
    }
    bool expected = false;
    for (auto g : brutePeriods(w)) expected = expected || (g < w.size() && w.size() % g == 0);
    CHECK(isProperPower(w) == expected);
  }
}

TEST_CASE("cyclic words") {
  CHECK(CyclicWord<char>(W("bca")) == CyclicWord<char>(W("abc")));
  CHECK_FALSE(CyclicWord<char>(W("acb")) == CyclicWord<char>(W("abc")));
  CHECK(cyclicallyEqual(W("abab"), W("baba")));
  CHECK(rotate(W("abcd"), 1) == W("bcda"));
  CHECK(extract(W("abcd"), Segment{3, 3, true}) == W("dab"));
  CHECK(isCyclicallyReduced(W("abAB"), inv));
  CHECK_FALSE(isCyclicallyReduced(W("abBA"), inv));
  CHECK_FALSE(isCyclicallyReduced(W("abA"), inv));
}

TEST_CASE("nz2 decomposition") {
  // a (ba) b^-1 (ba)^-1 = a b a B A B
  const auto w = W("abaBAB");
  const auto d = nz2Decompose(w, 2, inv);
  CHECK(d.m == 1);
  CHECK(d.s == 3);
  CHECK(d.kind == Nz2Case::Odd);
  CHECK(d.v3.empty());
  CHECK(d.alpha == std::vector<int>{1, 1, -1});
  CHECK(d.second == 'B');
  CHECK(d.beta == std::vector<int>{-1, 1, 1});
  CHECK(expand(d, inv) == w);

  try {
    nz2Decompose(w, 3, inv);
    FAIL("expected DEGENERATE_OFFSET");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateOffset);
  }
  try {
    nz2Decompose(W("abab"), 1, inv);
    FAIL("expected NOT_CONJUGATE_FORM");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotConjugateForm);
  }

  // s = 2, so the even branch applies.
  const std::vector<char> even = W("acACAcaC");
  REQUIRE(hasConjugateShape(even, inv));
  for (std::size_t j = 1; j < even.size(); ++j) {
    if (j % 4 == 0 || !detail::hasMirrorShape(even, j, inv)) continue;
    const auto de = nz2Decompose(even, j, inv);
    CHECK(expand(de, inv) == even);
    CHECK((de.s % 2 == 0) == (de.kind == Nz2Case::Even));
  }
}

TEST_CASE("order-two letter in a self-overlap") {
  const auto w = W("atAt");
  CHECK(findOrder2InOverlap(w, W("at"), inv) == 't');
  try {
    findOrder2InOverlap(W("abAB"), W("ab"), inv);
    FAIL("expected HYPOTHESIS_FAIL");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::HypothesisFail);
  }
}

TEST_CASE("u r u^-1 scanner") {
  const auto w = W("txtxt");
  const auto hits = scanWrwInverse(w, 2, inv);
  CHECK_FALSE(hits.empty());
  CHECK(hits.front() == WrwOccurrence{0, 1});
  CHECK(scanWrwInverse(W("abababab"), 2, inv).empty());
  CHECK_THROWS_AS(scanWrwInverse(W("abc"), 2, inv), Error);

  // Reported occurrences all satisfy the threshold and the pattern.
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t g = 1 + trial % 4;
    auto base = randomWord(rng, "aAbBt", g);
    std::vector<char> v;
    for (std::size_t i = 0; i < g + 2 + trial % 9; ++i) v.push_back(base[i % g]);
    for (const auto& o : scanWrwInverse(v, g, inv)) {
      CHECK(2 * o.uLength >= g);
      for (std::size_t i = 0; i < o.uLength; ++i)
        CHECK(v[o.start + 2 * o.uLength - i] == inv(v[o.start + i]));
    }
  }
}
