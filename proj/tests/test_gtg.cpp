#include "doctest.h"
#include "orp/gtg.hpp"
#include "support.hpp"

using namespace orp;
using namespace orp::testing;

namespace {

GtgDescription simple(const FreeProduct& fp, FpWord u, std::vector<ExpPair> exps, int n) {
  return GtgDescription{fp, {1, 1}, {2, 1}, std::move(u), std::move(exps), n};
}

}  // namespace

TEST_CASE("description validation and relator") {
  auto fp = cyclicProduct(3, 3);
  auto d = simple(fp, {{2, 1}, {1, 2}}, {{1, 2}}, 2);
  validate(d);
  CHECK(d.l() == 6);
  CHECK(relator(d).size() == 6);
  CHECK(freeProductLength(conjugatePair(d)) == 6);
  CHECK(label(d).size() == 12);
  CHECK(isCyclicallyReduced(relator(d)));

  auto bad = d;
  bad.exps = {{3, 1}};
  CHECK_THROWS_AS(validate(bad), Error);
  bad = d;
  bad.U = {{1, 1}};
  CHECK_THROWS_AS(validate(bad), Error);
}

TEST_CASE("special positions") {
  auto fp = cyclicProduct(3, 3);
  auto d = simple(fp, {{2, 1}, {1, 2}}, {{1, 1}, {1, 1}}, 1);
  const std::size_t l = d.l();
  CHECK(specialPositions(d) == std::vector<std::size_t>{0, l / 2, l, 3 * l / 2});
  const auto lab = label(d);
  for (auto j : specialPositions(d)) {
    const auto cls = simClass(d, lab[j]);
    CHECK((cls == d.a || cls == d.b));
  }
}

TEST_CASE("sim classes") {
  auto fp = cyclicProduct(6, 4);
  GtgDescription d{fp, {1, 2}, {1, 3}, {{2, 1}}, {{1, 1}}, 2};
  // <c^2> and <c^3> meet trivially, so the classes stay apart
  CHECK(simClass(d, {1, 4}) == d.a);
  CHECK(simClass(d, {1, 3}) == d.b);
  CHECK(simClass(d, {1, 1}) == FpLetter{1, 1});
  CHECK(simEqual(d, {1, 2}, {1, 4}));
  CHECK_FALSE(simEqual(d, {1, 2}, {1, 3}));
  // involution descends to the classes
  for (Elem e = 1; e < 6; ++e) {
    const FpLetter x{1, e};
    if (simClass(d, x) == d.a) CHECK(simClass(d, fp.inverse(x)) == d.a);
  }
  GtgDescription merged{fp, {1, 2}, {1, 4}, {{2, 1}}, {{1, 1}}, 2};
  CHECK(simClass(merged, {1, 4}) == merged.a);
}

TEST_CASE("admissibility examples") {
  auto fp = cyclicProduct(6, 4);
  CHECK(admissible(fp, {1, 2}, {1, 3}) == Decision::Yes);
  CHECK(admissible(fp, {1, 1}, {2, 1}) == Decision::Yes);
}

TEST_CASE("virtual periods") {
  auto fp = cyclicProduct(3, 3);
  auto d = simple(fp, {{2, 1}, {1, 2}}, {{1, 2}, {2, 1}}, 2);
  const auto N = label(d).size();

  const auto full = virtualPeriodCheck(d, Segment{0, N + d.l(), true}, d.l());
  REQUIRE(full.has_value());
  CHECK(validateWitness(d, *full));
  bool sawA = false;
  for (std::size_t t = 0; t < full->tags.size(); ++t) {
    if (full->tags[t] == VpTag::PowersOfA) {
      sawA = true;
      CHECK(t % d.l() == 0);
    }
  }
  CHECK(sawA);

  const auto tiny = virtualPeriodCheck(d, Segment{3, 4, true}, 6);
  REQUIRE(tiny.has_value());
  CHECK(tiny->tags.empty());

  // Over C3*C3 every letter is a power of a or b, so period 2 holds virtually ...
  CHECK(virtualPeriodCheck(d, Segment{1, 12, true}, 2).has_value());
  // ... but not once U contains a letter outside <a> and <b>.
  auto fp64 = cyclicProduct(6, 4);
  GtgDescription g{fp64, {1, 2}, {2, 1}, {{2, 2}, {1, 1}}, {{1, 1}, {2, 3}}, 2};
  validate(g);
  CHECK_FALSE(virtualPeriodCheck(g, Segment{1, 12, true}, 2).has_value());

  // Corrupted witnesses are rejected.
  auto broken = *full;
  for (auto& t : broken.tags)
    if (t == VpTag::Equal) {
      t = VpTag::PowersOfB;
      break;
    }
  CHECK_FALSE(validateWitness(d, broken));
}

TEST_CASE("combining virtual periods") {
  auto fp = cyclicProduct(3, 3);
  auto d = simple(fp, {}, {{1, 2}, {2, 2}, {1, 1}}, 3);  // l = 2: every letter is special
  const auto N = label(d).size();
  REQUIRE(N == 18);
  const Segment w1{0, 12, true}, w2{2, 14, true};
  REQUIRE(virtualPeriodCheck(d, w1, 4));
  REQUIRE(virtualPeriodCheck(d, w2, 6));
  const auto out = combineVirtualPeriods(d, w1, 4, w2, 6);
  REQUIRE(out.status == CombineStatus::Ok);
  CHECK(out.witness->mu == 2);
  CHECK(validateWitness(d, *out.witness));
  CHECK(virtualPeriodCheck(d, out.witness->segment, 2).has_value());

  const auto same = combineVirtualPeriods(d, w1, 4, w1, 4);
  REQUIRE(same.status == CombineStatus::Ok);
  CHECK(same.witness->mu == 4);

  // overlap one short of mu + nu - gcd
  const auto shortOverlap = combineVirtualPeriods(d, Segment{0, 9, true}, 4, Segment{2, 12, true}, 6);
  CHECK(shortOverlap.status == CombineStatus::NotApplicable);
}

TEST_CASE("planted refinements are found and re-expand exactly") {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto fp = trial % 2 ? cyclicProduct(3, 3) : cyclicProduct(6, 4);
    const auto inner = randomDescription(rng, fp, 2 * static_cast<std::size_t>(trial % 2), 1, 2);
    const auto outer = plantRefinement(inner, rng, 1 + trial % 2, 1 + static_cast<std::size_t>(trial % 3));
    validate(outer);
    const auto rep = detectRefinement(outer);
    REQUIRE(rep.refinement.has_value());
    const auto& r = rep.refinement->description;
    CHECK(relator(r) == relator(outer));
    CHECK(refinementMeasure(r) < refinementMeasure(outer));

    const auto chain = refinementChain(outer);
    for (std::size_t i = 1; i < chain.size(); ++i) {
      CHECK(refinementMeasure(chain[i]) < refinementMeasure(chain[i - 1]));
      CHECK(relator(chain[i]) == relator(outer));
    }
    CHECK_FALSE(detectRefinement(chain.back()).refinement.has_value());
  }
}

TEST_CASE("doubly planted chain shortens all the way down") {
  std::mt19937 rng(7);
  auto fp = cyclicProduct(3, 3);
  const auto inner = randomDescription(rng, fp, 2, 1, 2);
  const auto middle = plantRefinement(inner, rng, 1, 1);
  const auto outer = plantRefinement(middle, rng, 1, 2);
  const auto chain = refinementChain(outer);
  CHECK(chain.size() >= 2);
  CHECK(chain.back().l() <= inner.l());
}

TEST_CASE("descriptions with no detectable refinement") {
  auto fp = cyclicProduct(6, 4);
  GtgDescription d{fp, {1, 4}, {1, 5}, {{2, 1}, {1, 5}, {2, 2}}, {{1, 1}}, 2};
  validate(d);
  CHECK_FALSE(detectRefinement(d).refinement.has_value());
  CHECK(maximalRefinement(d).U == d.U);
}

TEST_CASE("generic C3*C3 descriptions with a length-3 U are maximal") {
  auto fp = cyclicProduct(3, 3);
  std::mt19937 rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    GtgDescription d{fp, randomLetter(rng, fp, 1), randomLetter(rng, fp, 1), randomAlternating(rng, fp, 3, 2),
                     {{1, 1}}, 2};
    validate(d);
    CHECK_FALSE(detectRefinement(d).refinement.has_value());
  }
  // U = f2:c f1:c^2 f2:c over a = b = f1:c
  GtgDescription d{fp, {1, 1}, {1, 1}, {{2, 1}, {1, 2}, {2, 1}}, {{1, 2}}, 2};
  CHECK(maximalRefinement(d).U == d.U);
}

TEST_CASE("self-inverse U refines through its middle letter") {
  auto fp = cyclicProduct(3, 2);
  // U = V x V^{-1} with x of order 2
  GtgDescription d{fp, {1, 1}, {1, 1}, {{2, 1}, {1, 1}, {2, 1}}, {{1, 1}}, 2};
  d.U = {{2, 1}};
  validate(d);
  GtgDescription longer{fp, {1, 1}, {1, 2}, {{2, 1}, {1, 1}, {2, 1}}, {{1, 1}}, 2};
  validate(longer);
  const auto rep = detectRefinement(longer);
  REQUIRE(rep.refinement.has_value());
  CHECK(relator(rep.refinement->description) == relator(longer));
}

TEST_CASE("mirror image") {
  auto fp = cyclicProduct(3, 3);
  auto d = simple(fp, {{2, 1}, {1, 2}}, {{1, 1}}, 2);
  const std::size_t h = d.half();
  // U occupies 1..h-1, its mirror is U^{-1} at h+1..l-1
  const Segment u{1, h - 1, true};
  const auto m = mirrorImage(d, u);
  CHECK(m.start == h + 1);
  const auto lab = label(d);
  CHECK(extract(lab, m) == inverse(fp, extract(lab, u)));
  CHECK(mirrorImage(d, Segment{0, 1, true}).start == 0);
  CHECK(mirrorImage(d, Segment{h, 1, true}).start == h);
  for (std::size_t s = 0; s < d.l(); ++s)
    for (std::size_t len = 0; len <= d.l(); ++len) {
      const Segment seg{s, len, true};
      const auto twice = mirrorImage(d, mirrorImage(d, seg));
      CHECK(twice.start % d.l() == (len ? s : s % d.l()));
      CHECK(twice.length == len);
    }
}
