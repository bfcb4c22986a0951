#include <random>
#include <set>

#include "doctest.h"
#include "orp/io.hpp"
#include "orp/solver.hpp"
#include "support.hpp"

using namespace orp;
using namespace orp::testing;

namespace {

GtgDescription loadDesc(const std::string& name) { return parseDescription(readFile(fixture(name))); }

using Perm = std::array<int, 4>;

Perm compose(const Perm& p, const Perm& q) {  // p then q
  Perm r{};
  for (int i = 0; i < 4; ++i) r[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])];
  return r;
}

// H = <x, y | x^3, y^3, (xy)^2> acting on 4 points as A4.
bool a4Trivial(const TriWord& w) {
  const Perm x{1, 2, 0, 3}, y{0, 2, 3, 1}, id{0, 1, 2, 3};
  const Perm xi = compose(x, x), yi = compose(y, y);
  Perm acc = id;
  for (int g : w) acc = compose(acc, g == GenX ? x : g == GenXInv ? xi : g == GenY ? y : yi);
  return acc == id;
}

FpWord productOfConjugates(const GtgDescription& d, std::mt19937& rng) {
  const FpWord rn = label(d), rni = inverse(d.fp, rn);
  FpWord raw;
  const int count = 1 + static_cast<int>(rng() % 3);
  for (int j = 0; j < count; ++j) {
    FpWord h;
    const int len = static_cast<int>(rng() % 4);
    for (int q = 0; q < len; ++q) h.push_back(randomLetter(rng, d.fp, 1 + static_cast<int>(rng() % 2)));
    const FpWord r = rotate(rng() % 2 ? rn : rni, rng() % rn.size());
    const FpWord hi = inverse(d.fp, h);
    raw.insert(raw.end(), h.begin(), h.end());
    raw.insert(raw.end(), r.begin(), r.end());
    raw.insert(raw.end(), hi.begin(), hi.end());
  }
  return raw;
}

void checkCertificate(const GtgDescription& d, const Oracles& o, const SolveResult& r) {
  REQUIRE(r.certificate.has_value());
  const auto rep = validate(*r.certificate, d, &o.h);
  CHECK(rep.ok());
  CHECK(rep.boundaryLabel == r.reduced);
}

}  // namespace

TEST_CASE("relator power is trivial with a one-clique certificate") {
  const auto d = loadDesc("c3c3.gtg");
  const auto o = makeOracles(d);
  REQUIRE(o.tag);
  REQUIRE(o.maximal);
  const auto r = boundedWordProblem(d, label(d), {}, o);
  CHECK(r.verdict == Verdict::Trivial);
  checkCertificate(d, o, r);
  CHECK(r.certificate->vertices.size() == 1);
  CHECK(r.certificate->vertices[0].sign == 0);
  CHECK(cyclicallyEqual(boundaryLabel(*r.certificate, d.fp), label(d)));

  const auto e = boundedWordProblem(d, {}, {}, o);
  CHECK(e.verdict == Verdict::Trivial);
  CHECK(e.certificate->vertices.empty());
}

TEST_CASE("relator and letters are nontrivial") {
  for (const char* name : {"c3c3.gtg", "c3c3_k2.gtg"}) {
    const auto d = loadDesc(name);
    const auto o = makeOracles(d);
    CHECK(boundedWordProblem(d, relator(d), {}, o).verdict == Verdict::Nontrivial);
    for (int f = 1; f <= 2; ++f)
      for (Elem e = 1; e < 3; ++e) {
        const auto r = boundedWordProblem(d, {FpLetter{f, e}}, {}, o);
        CHECK(r.verdict == Verdict::Nontrivial);
        CHECK_FALSE(r.certificate.has_value());
      }
    for (const auto& r : relatorOrderCheck(d, {}, o)) CHECK(r.verdict == Verdict::Nontrivial);
  }
}

TEST_CASE("preconditions") {
  // C2 * C3 with R = a U b U^-1: a has order 2 and R is short, so neither hypothesis holds
  const auto d = parseDescription("factor 1 cyclic 2\nfactor 2 cyclic 3\na = f1:c\nb = f1:c\nU = f2:c\n"
                                  "exps = (1,1)\nn = 2\n");
  const auto o = makeOracles(d);
  CHECK_FALSE(o.tag);
  CHECK_THROWS_AS(boundedWordProblem(d, relator(d), {}, o), Error);

  const auto base = loadDesc("c3c3.gtg");
  std::mt19937 rng(7);
  const auto outer = plantRefinement(base, rng, 1, 1);
  const auto po = makeOracles(outer, 2000);
  CHECK_FALSE(po.maximal);
  try {
    boundedWordProblem(outer, relator(outer), {}, po);
    FAIL("expected NotMaximal");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotMaximal);
  }
}

TEST_CASE("agreement with an independent H oracle") {
  const auto d = loadDesc("c3c3.gtg");
  const auto o = makeOracles(d);
  REQUIRE(o.h.order() == 12);
  // the permutation model is a quotient of H of the same order, hence H itself
  CHECK(a4Trivial(relatorWord(presentationOf(d))));
  std::size_t checked = 0, trivial = 0;
  std::vector<ExpPair> exps;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (exps.size() == k) {
      const bool expect = a4Trivial(syllableWord(exps));
      const auto r = boundedWordProblem(d, hWordImage(d, exps), {}, o);
      CHECK(r.verdict == (expect ? Verdict::Trivial : Verdict::Nontrivial));
      if (r.verdict == Verdict::Trivial) checkCertificate(d, o, r);
      ++checked;
      trivial += expect;
      return;
    }
    for (long long a = 1; a <= 2; ++a)
      for (long long b = 1; b <= 2; ++b) {
        exps.push_back({a, b});
        self(self, k);
        exps.pop_back();
      }
  };
  for (std::size_t k = 1; k <= 3; ++k) rec(rec, k);
  CHECK(checked == 4 + 16 + 64);
  CHECK(trivial > 0);
}

TEST_CASE("products of conjugates of the relator") {
  for (const char* name : {"c3c3.gtg", "c3c3_k2.gtg"}) {
    const auto d = loadDesc(name);
    const auto o = makeOracles(d);
    std::mt19937 rng(20240611);
    std::size_t decided = 0;
    for (int it = 0; it < 60; ++it) {
      const FpWord w = productOfConjugates(d, rng);
      const auto r = boundedWordProblem(d, w, {}, o);
      CHECK(r.verdict != Verdict::Nontrivial);
      if (r.verdict == Verdict::Trivial) {
        ++decided;
        checkCertificate(d, o, r);
        CHECK(r.certificate->vertices.size() >= r.steps.size());  // one clique per rewrite, plus the last word's
      } else {
        CHECK_FALSE(r.cap.empty());
      }
    }
    CHECK(decided >= 30);
  }
}

TEST_CASE("budget caps and monotonicity") {
  const auto d = loadDesc("c3c3.gtg");
  const auto o = makeOracles(d);
  std::mt19937 rng(11);
  // a word that needs at least one rewrite
  FpWord w;
  SolveResult full;
  do {
    w = productOfConjugates(d, rng);
    full = boundedWordProblem(d, w, {}, o);
  } while (full.verdict != Verdict::Trivial || full.steps.empty());

  SearchBudget tiny;
  tiny.maxGraphs = 1;
  auto r = boundedWordProblem(d, w, tiny, o);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.cap == "maxGraphs");

  SearchBudget noCliques;
  noCliques.maxCliques = 0;
  r = boundedWordProblem(d, w, noCliques, o);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.cap == "maxCliques");

  SearchBudget shortLabels;
  shortLabels.maxLabelLength = 1;
  r = boundedWordProblem(d, w, shortLabels, o);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.cap == "maxLabelLength");

  SearchBudget noTime;
  noTime.timeLimit = std::chrono::milliseconds(-1);
  r = boundedWordProblem(d, w, noTime, o);
  CHECK(r.verdict == Verdict::Inconclusive);
  CHECK(r.cap == "timeLimit");

  // growing budgets only resolve INCONCLUSIVE answers
  rng.seed(12);
  for (int it = 0; it < 30; ++it) {
    const FpWord x = it % 3 == 0 ? randomAlternating(rng, d.fp, 2 + rng() % 8, 1) : productOfConjugates(d, rng);
    Verdict last = Verdict::Inconclusive;
    for (std::size_t g : {1u, 2u, 4u, 16u, 1000u}) {
      SearchBudget b;
      b.maxGraphs = g;
      b.maxCliques = g;
      const auto v = boundedWordProblem(d, x, b, o).verdict;
      if (last != Verdict::Inconclusive) CHECK(v == last);
      last = v;
    }
  }
}

TEST_CASE("subword nontriviality") {
  const auto d = loadDesc("c3c3.gtg");
  const auto o = makeOracles(d);
  const FpWord rn = label(d);
  const std::size_t half = rn.size() / 2;
  const auto rep = weinbaumCheck(d, FpWord(rn.begin(), rn.begin() + half), FpWord(rn.begin() + half, rn.end()), {}, o);
  CHECK(rep.pass());
  CHECK(rep.first.verdict == Verdict::Nontrivial);
  CHECK(rep.second.verdict == Verdict::Nontrivial);

  auto code = [&](const FpWord& a, const FpWord& b) {
    try {
      weinbaumCheck(d, a, b, {}, o);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Parse;
  };
  CHECK(code({}, rn) == ErrorCode::BadSplit);
  CHECK(code(relator(d), relator(d)) != ErrorCode::BadSplit);
  CHECK(code(relator(d), {d.a}) == ErrorCode::BadSplit);

  // every split of every rotation: a TRIVIAL part would contradict the theorem
  for (std::size_t rot = 0; rot < rn.size(); ++rot) {
    const FpWord r = rotate(rn, rot);
    for (std::size_t cut = 1; cut < r.size(); ++cut) {
      const auto s = weinbaumCheck(d, FpWord(r.begin(), r.begin() + static_cast<long>(cut)),
                                   FpWord(r.begin() + static_cast<long>(cut), r.end()), {}, o);
      CHECK(s.verdict != Verdict::Trivial);
    }
  }
}

TEST_CASE("injectivity probe") {
  for (const char* name : {"c3c3.gtg", "c3c3_k2.gtg"}) {
    const auto d = loadDesc(name);
    const auto o = makeOracles(d);
    const auto rep = freiheitssatzProbe(d, 4, {}, o);
    CHECK(rep.pass());
    CHECK(rep.violations.empty());
    CHECK(rep.checked >= 4);
    CHECK(rep.skipped >= 2);  // the two identities
  }
}
