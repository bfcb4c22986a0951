#pragma once

// Generators shared by the unit and acceptance tests.

#include <memory>
#include <random>
#include <string>

#include "orp/gtg.hpp"

namespace orp::testing {

inline FreeProduct cyclicProduct(int p, int q) {
  return FreeProduct(std::make_shared<CyclicGroup>(Order::finite(p)), std::make_shared<CyclicGroup>(Order::finite(q)));
}

inline long long randomExponent(std::mt19937& rng, Order o) {
  return 1 + static_cast<long long>(rng() % static_cast<unsigned>(o.value() - 1));
}

inline FpLetter randomLetter(std::mt19937& rng, const FreeProduct& fp, int factor) {
  const int m = dynamic_cast<const CyclicGroup&>(fp.factor(factor)).order().value();
  return {factor, static_cast<Elem>(1 + rng() % static_cast<unsigned>(m - 1))};
}

/// Reduced alternating word of the given length starting in `firstFactor`.
inline FpWord randomAlternating(std::mt19937& rng, const FreeProduct& fp, std::size_t len, int firstFactor) {
  FpWord w;
  int f = firstFactor;
  for (std::size_t i = 0; i < len; ++i, f = 3 - f) w.push_back(randomLetter(rng, fp, f));
  return w;
}

/// a in factor 1, b in factor 2, U of even length starting in factor 2 and ending in factor 1.
inline GtgDescription randomDescription(std::mt19937& rng, const FreeProduct& fp, std::size_t uLen, std::size_t k,
                                        int n) {
  GtgDescription d{fp, randomLetter(rng, fp, 1), randomLetter(rng, fp, 2), randomAlternating(rng, fp, uLen, 2), {}, n};
  for (std::size_t i = 0; i < k; ++i) d.exps.push_back({randomExponent(rng, d.p()), randomExponent(rng, d.q())});
  return d;
}

/// A description whose relator also parses over `inner`:
///   U = (V b^{f_1} V^{-1} a^{e_1}) ... (V b^{f_r} V^{-1} a^{e_r}) V  with V = inner.U.
inline GtgDescription plantRefinement(const GtgDescription& inner, std::mt19937& rng, int r, std::size_t k) {
  const FreeProduct& fp = inner.fp;
  const FpWord vi = inverse(fp, inner.U);
  FpWord u;
  for (int i = 0; i < r; ++i) {
    u.insert(u.end(), inner.U.begin(), inner.U.end());
    u.push_back(*fp.power(inner.b, randomExponent(rng, inner.q())));
    u.insert(u.end(), vi.begin(), vi.end());
    u.push_back(*fp.power(inner.a, randomExponent(rng, inner.p())));
  }
  u.insert(u.end(), inner.U.begin(), inner.U.end());
  GtgDescription outer{fp, inner.a, inner.b, normalize(fp, u), {}, inner.n};
  for (std::size_t i = 0; i < k; ++i)
    outer.exps.push_back({randomExponent(rng, outer.p()), randomExponent(rng, outer.q())});
  return outer;
}

inline std::string fixture(const std::string& rel) { return std::string(ORP_FIXTURES) + "/" + rel; }

}  // namespace orp::testing
