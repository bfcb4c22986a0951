#include "orp/gtg.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace orp {

namespace {

bool inRange(long long e, Order o) { return o.isInfinite() ? e != 0 : (e > 0 && e < o.value()); }

long long normalizeExponent(long long e, Order o) {
  if (o.isInfinite()) return e;
  const long long m = o.value();
  return ((e % m) + m) % m;
}

FpLetter powerOrThrow(const FreeProduct& fp, const FpLetter& x, long long e) {
  auto p = fp.power(x, e);
  if (!p) throw Error(ErrorCode::InvalidDescription, "exponent gives the identity");
  return *p;
}

void append(FpWord& out, const FpWord& w) { out.insert(out.end(), w.begin(), w.end()); }

/// <a> ∩ <b> != 1.
bool powersMeet(const GtgDescription& d) {
  if (d.a.factor != d.b.factor) return false;
  const FactorGroup& g = d.fp.factor(d.a.factor);
  const Order pa = g.elementOrder(d.a.element);
  const Order pb = g.elementOrder(d.b.element);
  if (pa.isInfinite() && pb.isInfinite()) return g.isCyclic();
  const FpLetter& fin = pa.isFinite() ? d.a : d.b;
  const FpLetter& other = pa.isFinite() ? d.b : d.a;
  const int m = g.elementOrder(fin.element).value();
  for (int i = 1; i < m; ++i)
    if (g.isPowerOf(g.power(fin.element, i), other.element)) return true;
  return false;
}

}  // namespace

void validate(const GtgDescription& d) {
  auto bad = [](const std::string& why) { throw Error(ErrorCode::InvalidDescription, why); };
  if (d.a.factor < 1 || d.a.factor > 2 || d.b.factor < 1 || d.b.factor > 2) bad("factor index must be 1 or 2");
  if (d.fp.factor(d.a.factor).isIdentity(d.a.element)) bad("a is the identity");
  if (d.fp.factor(d.b.factor).isIdentity(d.b.element)) bad("b is the identity");
  if (d.exps.empty()) bad("need at least one exponent pair");
  if (d.n < 1) bad("n must be positive");
  for (const auto& e : d.exps) {
    if (!inRange(e.alpha, d.p())) bad("alpha out of range: " + std::to_string(e.alpha));
    if (!inRange(e.beta, d.q())) bad("beta out of range: " + std::to_string(e.beta));
  }
  for (const auto& x : d.U)
    if (d.fp.factor(x.factor).isIdentity(x.element)) bad("U contains the identity");
  if (!isReduced(d.U)) bad("U is not reduced");
  if (d.U.empty()) {
    if (d.a.factor == d.b.factor) bad("with U empty, a and b must lie in different factors");
  } else {
    if (d.U.front().factor == d.a.factor) bad("U must start outside the factor of a");
    if (d.U.back().factor == d.b.factor) bad("U must end outside the factor of b");
  }
}

FpWord conjugatePair(const GtgDescription& d) {
  FpWord w{d.a};
  append(w, d.U);
  w.push_back(d.b);
  append(w, inverse(d.fp, d.U));
  return w;
}

FpWord relator(const GtgDescription& d) {
  const FpWord ui = inverse(d.fp, d.U);
  FpWord r;
  for (const auto& e : d.exps) {
    r.push_back(powerOrThrow(d.fp, d.a, e.alpha));
    append(r, d.U);
    r.push_back(powerOrThrow(d.fp, d.b, e.beta));
    append(r, ui);
  }
  return r;
}

FpWord label(const GtgDescription& d) {
  const FpWord r = relator(d);
  FpWord out;
  for (int i = 0; i < d.n; ++i) append(out, r);
  return out;
}

std::vector<std::size_t> specialPositions(const GtgDescription& d) {
  std::vector<std::size_t> out;
  const std::size_t total = static_cast<std::size_t>(d.n) * d.k() * d.l();
  for (std::size_t j = 0; j < total; j += d.half()) out.push_back(j);
  return out;
}

FpLetter simClass(const GtgDescription& d, const FpLetter& x) {
  const bool isA = d.fp.isPowerOf(x, d.a);
  const bool isB = d.fp.isPowerOf(x, d.b);
  if (!isA && !isB) return x;
  if (isA && isB) return d.a;  // x is a common power, so the classes have merged
  if (isA) return d.a;
  return powersMeet(d) ? d.a : d.b;
}

bool simEqual(const GtgDescription& d, const FpLetter& x, const FpLetter& y) {
  return simClass(d, x) == simClass(d, y);
}

std::string_view tagName(VpTag t) {
  switch (t) {
    case VpTag::Equal: return "EQUAL";
    case VpTag::PowersOfA: return "POWERS_OF_A";
    case VpTag::PowersOfB: return "POWERS_OF_B";
    case VpTag::PowersOfRoot: return "POWERS_OF_COMMON_ROOT";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Virtual periods

namespace {

struct LabelView {
  FpWord word;
  std::size_t l = 0, half = 0;
  const FpLetter& at(std::size_t i) const { return word[i % word.size()]; }
};

}  // namespace

std::optional<VirtualPeriodWitness> virtualPeriodCheck(const GtgDescription& d, const Segment& seg, std::size_t mu) {
  if (mu == 0) throw Error(ErrorCode::NotAPeriod, "virtual period must be positive");
  const LabelView L{label(d), d.l(), d.half()};
  const std::size_t N = L.word.size();
  const std::size_t s = seg.start % N;
  const std::size_t e = s + seg.length;  // exclusive, unwrapped
  const auto root = commonRoot(d.fp, d.a, d.b);

  // special letters of W, split by residue mod l
  std::vector<std::size_t> specialA, specialB, specialAny;
  for (std::size_t pos = s; pos < e; ++pos) {
    if (pos % L.half != 0) continue;
    specialAny.push_back(pos);
    (pos % L.l == 0 ? specialA : specialB).push_back(pos);
  }
  auto hasSpecial = [&](const std::vector<std::size_t>& list, std::size_t i, const FpLetter& base) {
    return std::any_of(list.begin(), list.end(), [&](std::size_t pos) {
      return (pos + mu * N - i) % mu == 0 && d.fp.isPowerOf(L.at(pos), base);
    });
  };

  VirtualPeriodWitness w{mu, Segment{s, seg.length, true}, {}};
  for (std::size_t i = s; i + mu < e; ++i) {
    const FpLetter& x = L.at(i);
    const FpLetter& y = L.at(i + mu);
    if (x == y) {
      w.tags.push_back(VpTag::Equal);
    } else if (d.fp.isPowerOf(x, d.a) && d.fp.isPowerOf(y, d.a) && hasSpecial(specialA, i, d.a)) {
      w.tags.push_back(VpTag::PowersOfA);
    } else if (d.fp.isPowerOf(x, d.b) && d.fp.isPowerOf(y, d.b) && hasSpecial(specialB, i, d.b)) {
      w.tags.push_back(VpTag::PowersOfB);
    } else if (root && d.fp.isPowerOf(x, *root) && d.fp.isPowerOf(y, *root) && hasSpecial(specialAny, i, *root)) {
      w.tags.push_back(VpTag::PowersOfRoot);
    } else {
      return std::nullopt;
    }
  }
  return w;
}

bool validateWitness(const GtgDescription& d, const VirtualPeriodWitness& w) {
  const FpWord lab = label(d);
  const std::size_t N = lab.size();
  const std::size_t l = d.l(), h = d.half(), mu = w.mu;
  if (mu == 0) return false;
  const std::size_t first = w.segment.start % N;
  const std::size_t last = first + w.segment.length;  // exclusive
  const std::size_t count = w.segment.length > mu ? w.segment.length - mu : 0;
  if (w.tags.size() != count) return false;
  auto z = [&](std::size_t i) { return lab[i % N]; };

  // Walk from i in steps of mu to every d in W congruent to i.
  auto specialWith = [&](std::size_t i, std::size_t residue, std::size_t modulus, const FpLetter& base) {
    for (std::size_t pos = first + (i - first) % mu; pos < last; pos += mu)
      if (pos % modulus == residue && d.fp.isPowerOf(z(pos), base)) return true;
    return false;
  };

  const auto root = commonRoot(d.fp, d.a, d.b);
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t i = first + t;
    const FpLetter zi = z(i), zj = z(i + mu);
    bool ok = false;
    switch (w.tags[t]) {
      case VpTag::Equal: ok = zi == zj; break;
      case VpTag::PowersOfA:
        ok = d.fp.isPowerOf(zi, d.a) && d.fp.isPowerOf(zj, d.a) && specialWith(i, 0, l, d.a);
        break;
      case VpTag::PowersOfB:
        ok = d.fp.isPowerOf(zi, d.b) && d.fp.isPowerOf(zj, d.b) && specialWith(i, h, l, d.b);
        break;
      case VpTag::PowersOfRoot:
        ok = root && d.fp.isPowerOf(zi, *root) && d.fp.isPowerOf(zj, *root) && specialWith(i, 0, h, *root);
        break;
    }
    if (!ok) return false;
  }
  return true;
}

CombineOutcome combineVirtualPeriods(const GtgDescription& d, const Segment& w1, std::size_t mu, const Segment& w2,
                                     std::size_t nu) {
  const FpWord lab = label(d);
  const std::size_t N = lab.size();
  Segment first = w1, second = w2;
  std::size_t p1 = mu, p2 = nu;
  std::size_t delta = (w2.start % N + N - w1.start % N) % N;
  if (delta > w1.length) {
    std::swap(first, second);
    std::swap(p1, p2);
    delta = (second.start % N + N - first.start % N) % N;
    if (delta > first.length) return {CombineStatus::PreconditionFailed, std::nullopt};
  }
  if (!virtualPeriodCheck(d, first, p1) || !virtualPeriodCheck(d, second, p2))
    return {CombineStatus::PreconditionFailed, std::nullopt};

  const std::size_t s1 = first.start % N, e1 = s1 + first.length;
  const std::size_t s2 = s1 + delta, e2 = s2 + second.length;
  const std::size_t S = s1, E = std::max(e1, e2);
  const std::size_t overlap = std::min(e1, e2) - s2;
  const std::size_t gamma = std::gcd(p1, p2);
  if (overlap + gamma < p1 + p2) return {CombineStatus::NotApplicable, std::nullopt};

  auto z = [&](std::size_t i) { return lab[i % N]; };
  const auto root = commonRoot(d.fp, d.a, d.b);
  VirtualPeriodWitness out{gamma, Segment{S, E - S, true}, {}};

  // Chains i = i(0), ..., i(t) = i + gamma with steps of ±mu inside the first segment
  // and ±nu inside the second.
  for (std::size_t i = S; i + gamma < E; ++i) {
    std::map<std::size_t, std::size_t> parent{{i, i}};
    std::deque<std::size_t> queue{i};
    const std::size_t target = i + gamma;
    while (!queue.empty() && !parent.contains(target)) {
      const std::size_t x = queue.front();
      queue.pop_front();
      auto visit = [&](std::size_t y) {
        if (parent.emplace(y, x).second) queue.push_back(y);
      };
      if (x + p1 < e1 && x >= s1) visit(x + p1);
      if (x >= s1 + p1 && x < e1) visit(x - p1);
      if (x + p2 < e2 && x >= s2) visit(x + p2);
      if (x >= s2 + p2 && x < e2) visit(x - p2);
    }
    if (!parent.contains(target)) throw Error(ErrorCode::TheoremViolation, "no chain between i and i + gamma");
    std::vector<FpLetter> chain;
    for (std::size_t x = target;; x = parent[x]) {
      chain.push_back(z(x));
      if (x == i) break;
    }
    auto all = [&](auto pred) { return std::all_of(chain.begin(), chain.end(), pred); };
    if (all([&](const FpLetter& x) { return x == chain.front(); })) {
      out.tags.push_back(VpTag::Equal);
    } else if (root && all([&](const FpLetter& x) { return d.fp.isPowerOf(x, *root); })) {
      out.tags.push_back(VpTag::PowersOfRoot);
    } else if (all([&](const FpLetter& x) { return d.fp.isPowerOf(x, d.a); })) {
      out.tags.push_back(VpTag::PowersOfA);
    } else if (all([&](const FpLetter& x) { return d.fp.isPowerOf(x, d.b); })) {
      out.tags.push_back(VpTag::PowersOfB);
    } else {
      throw Error(ErrorCode::TheoremViolation, "chain mixes powers of a and b");
    }
  }
  if (!validateWitness(d, out)) throw Error(ErrorCode::TheoremViolation, "combined witness failed re-validation");
  return {CombineStatus::Ok, out};
}

// ---------------------------------------------------------------------------
// Refinement

std::pair<std::size_t, std::size_t> refinementMeasure(const GtgDescription& d) { return {d.l(), 2 * d.k()}; }

namespace {

/// Does w parse as an alternating product of powers of a2 and U2 b2^f U2^{-1}?
bool parsesOver(const FreeProduct& fp, const FpWord& w, const FpLetter& a2, const FpWord& u2, const FpLetter& b2) {
  const FpWord u2i = inverse(fp, u2);
  const std::size_t tlen = 2 * u2.size() + 1;
  std::vector<char> reach(w.size() + 1, 0);
  reach[0] = 1;
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    if (!reach[pos]) continue;
    if (fp.isPowerOf(w[pos], a2)) reach[pos + 1] = 1;
    if (pos + tlen <= w.size() && std::equal(u2.begin(), u2.end(), w.begin() + static_cast<std::ptrdiff_t>(pos)) &&
        fp.isPowerOf(w[pos + u2.size()], b2) &&
        std::equal(u2i.begin(), u2i.end(), w.begin() + static_cast<std::ptrdiff_t>(pos + u2.size() + 1)))
      reach[pos + tlen] = 1;
  }
  return reach[w.size()];
}

}  // namespace

std::optional<GtgDescription> tryRefineWith(const GtgDescription& d, const FpLetter& a2, const FpWord& u2,
                                            const FpLetter& b2) {
  GtgDescription out{d.fp, a2, b2, u2, {}, d.n};
  const FpWord r = relator(d);
  const std::size_t l2 = out.l(), h2 = out.half();
  if (r.size() % l2 != 0) return std::nullopt;
  const FpWord u2i = inverse(d.fp, u2);
  for (std::size_t t = 0; t < r.size(); t += l2) {
    const auto e = d.fp.exponentOf(r[t], a2);
    const auto f = d.fp.exponentOf(r[t + h2], b2);
    if (!e || !f) return std::nullopt;
    if (!std::equal(u2.begin(), u2.end(), r.begin() + static_cast<std::ptrdiff_t>(t + 1))) return std::nullopt;
    if (!std::equal(u2i.begin(), u2i.end(), r.begin() + static_cast<std::ptrdiff_t>(t + h2 + 1))) return std::nullopt;
    out.exps.push_back({normalizeExponent(*e, out.p()), normalizeExponent(*f, out.q())});
  }
  try {
    validate(out);
  } catch (const Error&) {
    return std::nullopt;
  }
  // containment <a, UbU^{-1}> <= <a', U'b'U'^{-1}>
  FpWord t = d.U;
  t.push_back(d.b);
  append(t, inverse(d.fp, d.U));
  if (!parsesOver(d.fp, {d.a}, a2, u2, b2) || !parsesOver(d.fp, t, a2, u2, b2)) return std::nullopt;
  if (relator(out) != r) throw Error(ErrorCode::TheoremViolation, "refined relator differs from R");
  return out;
}

RefinementReport detectRefinement(const GtgDescription& d) {
  validate(d);
  RefinementReport report;
  const auto inv = d.fp.involution();
  const auto root = commonRoot(d.fp, d.a, d.b);
  const FpWord lab = label(d);

  // letters y with x in <y>, drawn from x itself and the distinguished letters
  auto rootsOf = [&](const FpLetter& x) {
    std::set<FpLetter> out;
    std::vector<FpLetter> pool{x, d.a, d.b};
    if (root) pool.push_back(*root);
    for (const auto& y : pool)
      if (d.fp.isPowerOf(x, y)) out.insert(y);
    return out;
  };

  using Key = std::tuple<std::size_t, FpLetter, FpWord, FpLetter>;
  std::optional<std::pair<Key, Refinement>> best;
  auto consider = [&](const FpLetter& a2, const FpWord& u2, const FpLetter& b2, const char* source) {
    if (u2.size() >= d.U.size()) return;
    ++report.candidatesTried;
    Key key{u2.size(), a2, u2, b2};
    if (best && !(key < best->first)) return;
    if (auto r = tryRefineWith(d, a2, u2, b2)) best.emplace(key, Refinement{*r, source});
  };
  auto considerAll = [&](const FpLetter& x, const FpWord& v, const FpLetter& y, const char* source) {
    for (const auto& a2 : rootsOf(x))
      for (const auto& b2 : rootsOf(y)) consider(a2, v, b2, source);
  };

  auto exponentRange = [&](Order o, bool useAlpha) {
    std::set<long long> out;
    if (o.isFinite()) {
      for (long long e = 1; e < o.value(); ++e) out.insert(e);
    } else {
      out.insert(1);
      for (const auto& e : d.exps) out.insert(useAlpha ? e.alpha : e.beta);
    }
    return out;
  };

  // the rotation of w by j reads a^gamma U b^delta U^{-1}
  auto sameShape = [&](const FpWord& w, std::size_t j) {
    const std::size_t len = w.size(), h = d.half();
    auto at = [&](std::size_t i) { return w[(j + i) % len]; };
    if (!d.fp.isPowerOf(at(0), d.a) || !d.fp.isPowerOf(at(h), d.b)) return false;
    for (std::size_t i = 0; i < d.U.size(); ++i)
      if (!(at(1 + i) == d.U[i])) return false;
    return true;
  };

  // Conjugate pairs a^alpha U b^beta U^{-1} with a proper cyclic conjugate of the same shape.
  if (admissible(d.fp, d.a, d.b) != Decision::Yes) {
    report.admissibilitySkipped = true;
  } else {
    const std::size_t h = d.half();
    for (long long alpha : exponentRange(d.p(), true))
      for (long long beta : exponentRange(d.q(), false)) {
        GtgDescription one{d.fp, d.a, d.b, d.U, {{alpha, beta}}, 1};
        const FpWord w = relator(one);
        for (std::size_t j = 1; j < w.size(); ++j) {
          if (j % h == 0 || !detail::hasMirrorShape(w, j, inv)) continue;
          if (!sameShape(w, j)) continue;
          const auto dec = nz2Decompose(w, j, inv);
          considerAll(dec.first, dec.v3, dec.second, "conjugate-pair");
        }
      }
    // The rotation by l/2 has the same shape exactly when U = V x V^{-1} with x of order 2.
    if (!d.U.empty() && d.U.size() % 2 == 1 && inverse(d.fp, d.U) == d.U) {
      const std::size_t mid = d.U.size() / 2;
      const FpWord v(d.U.begin(), d.U.begin() + static_cast<std::ptrdiff_t>(mid));
      if (root) consider(*root, v, d.U[mid], "conjugate-pair");
      considerAll(d.a, v, d.U[mid], "conjugate-pair");
    }
  }

  // Virtual periods mu < l of the clique label.
  for (std::size_t mu = 2; mu < d.l(); mu += 2) {
    if (d.l() % mu != 0) continue;
    if (!virtualPeriodCheck(d, Segment{0, lab.size() + mu, true}, mu)) continue;
    const FpWord v(lab.begin() + 1, lab.begin() + static_cast<std::ptrdiff_t>(mu / 2));
    const FpLetter x = lab[mu / 2];
    considerAll(lab[0], v, x, "virtual-period");
    if (root) {
      consider(*root, v, x, "virtual-period");
      consider(*root, v, *root, "virtual-period");
    }
  }

  if (best) report.refinement = best->second;
  return report;
}

std::vector<GtgDescription> refinementChain(const GtgDescription& d) {
  std::vector<GtgDescription> chain{d};
  const std::size_t cap = relator(d).size();
  for (std::size_t step = 0; step <= cap; ++step) {
    auto r = detectRefinement(chain.back());
    if (!r.refinement) return chain;
    if (!(refinementMeasure(r.refinement->description) < refinementMeasure(chain.back())))
      throw Error(ErrorCode::TheoremViolation, "refinement did not decrease the measure");
    chain.push_back(r.refinement->description);
  }
  throw Error(ErrorCode::TheoremViolation, "refinement did not terminate within len(R) steps");
}

GtgDescription maximalRefinement(const GtgDescription& d) { return refinementChain(d).back(); }

Segment mirrorImage(const GtgDescription& d, const Segment& seg) {
  const std::size_t l = d.l();
  if (seg.length == 0) return Segment{(l - seg.start % l) % l, 0, true};
  const std::size_t lastPos = (seg.start + seg.length - 1) % l;
  return Segment{(l - lastPos) % l, seg.length, true};
}

std::optional<FormParse> parseForm(const GtgDescription& d, const FpWord& w) {
  const std::size_t len = w.size(), l = d.l(), h = d.half();
  if (len == 0 || len % l != 0) return std::nullopt;
  const FpWord ui = inverse(d.fp, d.U);
  auto exponent = [&](const FpLetter& x, const FpLetter& g) -> std::optional<long long> {
    auto e = d.fp.exponentOf(x, g);
    if (!e) return std::nullopt;
    const Order o = d.fp.order(g);
    if (o.isFinite()) *e = ((*e % o.value()) + o.value()) % o.value();
    return e;
  };
  for (std::size_t r = 0; r < len; ++r) {
    auto at = [&](std::size_t i) { return w[(r + i) % len]; };
    FormParse out{r, {}};
    bool ok = true;
    for (std::size_t s = 0; ok && s < len; s += l) {
      const auto alpha = exponent(at(s), d.a);
      const auto beta = exponent(at(s + h), d.b);
      ok = alpha && beta;
      for (std::size_t i = 0; ok && i < d.U.size(); ++i)
        ok = at(s + 1 + i) == d.U[i] && at(s + h + 1 + i) == ui[i];
      if (ok) out.exps.push_back({*alpha, *beta});
    }
    if (ok) return out;
  }
  return std::nullopt;
}

std::string format(const GtgDescription& d) {
  std::string out;
  out += "factor 1 " + d.fp.factor(1).describe() + "\n";
  out += "factor 2 " + d.fp.factor(2).describe() + "\n";
  out += "a = " + d.fp.format(d.a) + "\n";
  out += "b = " + d.fp.format(d.b) + "\n";
  out += "U = " + d.fp.format(d.U) + "\n";
  out += "exps =";
  for (const auto& e : d.exps) out += " (" + std::to_string(e.alpha) + "," + std::to_string(e.beta) + ")";
  out += "\nn = " + std::to_string(d.n) + "\n";
  return out;
}

}  // namespace orp
