#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "orp/error.hpp"
#include "orp/triangle.hpp"

using namespace orp;

namespace {

using Perm = PermutationGroup::Perm;

Perm compose(const Perm& g, const Perm& h) {  // g then h
  Perm out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = h[g[i]];
  return out;
}

int permOrder(const Perm& g) {
  Perm id(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) id[i] = static_cast<int>(i);
  Perm cur = g;
  int k = 1;
  while (cur != id) {
    cur = compose(cur, g);
    ++k;
  }
  return k;
}

// First involution/3-cycle-type pair in S_deg whose product has order r, by lexicographic search.
std::pair<Perm, Perm> findGenerators(int deg, int r) {
  std::vector<Perm> all;
  Perm p(static_cast<std::size_t>(deg));
  for (int i = 0; i < deg; ++i) p[static_cast<std::size_t>(i)] = i;
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  for (const auto& x : all) {
    if (permOrder(x) != 2) continue;
    for (const auto& y : all)
      if (permOrder(y) == 3 && permOrder(compose(x, y)) == r) {
        PermutationGroup g(deg, {x, y});
        if (g.size() == std::size_t(r == 3 ? 12 : r == 4 ? 24 : 60)) return {x, y};
      }
  }
  return {};
}

}  // namespace

TEST_CASE("representation matrices") {
  const auto r33 = buildRep(3, 3);
  CHECK(r33.t == doctest::Approx(1.0));
  CHECK(std::abs((r33.X * r33.Y).trace()) < 1e-9);
  for (int p = 3; p <= 5; ++p)
    for (int q = 3; q <= 5; ++q) {
      const auto rep = buildRep(p, q);
      CHECK(rep.t == doctest::Approx(-2 * std::cos(std::numbers::pi / p + std::numbers::pi / q)));
      CHECK(psl2Order(rep.X) == std::optional<int>(p));
      CHECK(psl2Order(rep.Y) == std::optional<int>(q));
      CHECK(psl2Order(rep.X * rep.Y) == std::optional<int>(2));
    }
  CHECK_THROWS_AS(buildRep(2, 3), Error);
}

TEST_CASE("trace orders") {
  Mat2C m;
  m << 0, 1, -1, 0;  // trace 0
  CHECK(psl2Order(m) == std::optional<int>(2));
  m << 1, -1, 1, 0;  // trace 1
  CHECK(psl2Order(m) == std::optional<int>(3));
  m << 1, 1, 0, 1;  // parabolic
  CHECK_FALSE(psl2Order(m, 1000).has_value());
  m << -1, 0, 0, -1;
  CHECK(psl2Order(m) == std::optional<int>(1));
  m << 2, 0, 0, 2;
  CHECK_THROWS_AS(psl2Order(m), Error);
}

TEST_CASE("spherical triangle groups match permutation oracles") {
  for (int r : {3, 4, 5}) {
    const auto table = toddCoxeter(triangle(2, 3, r), 1000);
    REQUIRE(table.complete());
    CHECK(checkTable(table));
    const auto [x, y] = findGenerators(r == 3 ? 4 : r == 4 ? 4 : 5, r);
    REQUIRE(!x.empty());
    PermutationGroup image(static_cast<int>(x.size()), {x, y});
    // the permutations satisfy the relators, so |H| >= |image|; equality pins H down
    CHECK(table.order() == image.size());
  }
  CHECK(toddCoxeter(triangle(2, 3, 3), 1000).order() == 12);
  CHECK(toddCoxeter(triangle(2, 3, 4), 1000).order() == 24);
  CHECK(toddCoxeter(triangle(2, 3, 5), 1000).order() == 60);
  CHECK(toddCoxeter(triangle(3, 3, 2), 1000).order() == 12);
  CHECK(toddCoxeter(triangle(3, 4, 2), 1000).order() == 24);
  CHECK(toddCoxeter(triangle(3, 5, 2), 1000).order() == 60);
}

TEST_CASE("infinite triangle group exceeds the bound") {
  const auto t = toddCoxeter(triangle(3, 3, 3), 10);
  CHECK(t.status == TableStatus::Exceeded);
  CHECK_THROWS_AS(isTrivialInH(t, {}), Error);
}

TEST_CASE("word problem through the coset action") {
  const auto table = toddCoxeter(triangle(2, 3, 3), 1000);
  CHECK(isTrivialInH(table, {}));
  CHECK_FALSE(isTrivialInH(table, xPow(1)));
  CHECK(isTrivialInH(table, parseTriWord("xy xy xy")));
  CHECK(isTrivialInH(table, parseTriWord("y^3")));
  CHECK(elementOrder(table, parseTriWord("x y")) == Order::finite(3));
  CHECK(elementOrder(table, parseTriWord("y")) == Order::finite(3));
}

TEST_CASE("coset orders agree with trace orders") {
  std::mt19937 rng(3);
  for (auto [p, q] : {std::pair{3, 3}, {3, 4}, {3, 5}}) {
    const auto table = toddCoxeter(triangle(p, q, 2), 1000);
    const auto rep = buildRep(p, q);
    for (int trial = 0; trial < 100; ++trial) {
      TriWord w;
      const int len = 1 + static_cast<int>(rng() % 10);
      for (int i = 0; i < len; ++i) w.push_back(static_cast<int>(rng() % 4));
      const auto tr = psl2Order(evaluate(rep, w));
      if (tr) CHECK(elementOrder(table, w) == Order::finite(*tr));
    }
  }
}

TEST_CASE("two-syllable relations in (p,q,2) triangle groups") {
  for (auto [p, q] : {std::pair{3, 3}, {3, 4}, {3, 5}}) {
    const auto table = toddCoxeter(triangle(p, q, 2), 1000);
    const auto rep = verifyProp1(p, q, table);
    CHECK_FALSE(rep.skipped);
    CHECK(rep.checked == std::size_t((p - 1) * (q - 1) * (p - 1) * (q - 1)));
    CHECK(rep.unexpected.empty());
    using T = std::array<long long, 4>;
    CHECK(rep.trivial == std::vector<T>{{1, 1, 1, 1}, {p - 1, q - 1, p - 1, q - 1}});
  }
  CHECK(verifyProp1(2, 3, toddCoxeter(triangle(2, 3, 3), 100)).skipped);
}

TEST_CASE("spelling probe") {
  const auto pres = triangle(2, 3, 3);
  const auto s = verifySpelling(pres, toddCoxeter(pres, 1000));
  CHECK(s.trivial.empty());
  CHECK(s.checked == 2 + 4);  // l = 1, 2 with one x-exponent and two y-exponents

  const auto p332 = triangle(3, 3, 2);
  const auto s2 = verifySpelling(p332, toddCoxeter(p332, 1000));
  CHECK(s2.checked == 4);
  CHECK(s2.trivial.empty());

  const TrianglePresentation one{Order::finite(3), Order::finite(3), {{1, 1}}, 1};
  CHECK(verifySpelling(one, toddCoxeter(one, 100)).checked == 0);
}

TEST_CASE("presentation text") {
  const auto pres = parsePresentation("p=3 q=3 n=2 exps=(1,1)(1,2)");
  CHECK(pres.k() == 2);
  CHECK(format(pres) == "p=3 q=3 n=2 exps=(1,1)(1,2)");
  CHECK(parsePresentation(format(pres)).exps == pres.exps);
  CHECK_THROWS_AS(parsePresentation("p=3 q=3 n=2 exps=(3,1)"), Error);
  CHECK_THROWS_AS(parsePresentation("p=3 n=2 exps=(1,1)"), Error);
  CHECK(format(parseTriWord("x^-2 y")) == "XXy");
}
