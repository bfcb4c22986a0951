#include "orp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

#include "orp/error.hpp"

namespace orp {

std::size_t SearchBudget::labelBound(const GtgDescription& d, std::size_t m) const {
  if (maxLabelLength > 0) return maxLabelLength;
  const double f = isoperimetricC * static_cast<double>(m) * static_cast<double>(m);
  return d.l() * (m + static_cast<std::size_t>(std::ceil(6 * f)));
}

std::string_view verdictName(Verdict v) {
  switch (v) {
    case Verdict::Trivial: return "TRIVIAL";
    case Verdict::Nontrivial: return "NONTRIVIAL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Oracles makeOracles(const GtgDescription& d, std::size_t maxCosets) {
  Oracles o;
  o.tag = checkHypotheses(d);
  o.maximal = !detectRefinement(d).refinement.has_value();
  o.h = toddCoxeter(presentationOf(d), maxCosets);
  return o;
}

FpWord hWordImage(const GtgDescription& d, const std::vector<ExpPair>& exps) {
  FpWord raw;
  const FpWord uInv = inverse(d.fp, d.U);
  for (const auto& e : exps) {
    if (auto x = d.fp.power(d.a, e.alpha)) raw.push_back(*x);
    raw.insert(raw.end(), d.U.begin(), d.U.end());
    if (auto y = d.fp.power(d.b, e.beta)) raw.push_back(*y);
    raw.insert(raw.end(), uInv.begin(), uInv.end());
  }
  return normalize(d.fp, raw);
}

namespace {

using Clock = std::chrono::steady_clock;

FpWord cyclicSub(const FpWord& w, std::size_t start, std::size_t len) {
  FpWord out;
  for (std::size_t j = 0; j < len; ++j) out.push_back(w[(start + j) % w.size()]);
  return out;
}

// Letters that can sit at one position of a word of H-form.
std::vector<FpLetter> gCandidates(const GtgDescription& d, std::size_t maxPower) {
  std::set<FpLetter> out(d.U.begin(), d.U.end());
  for (const auto& x : d.U) out.insert(d.fp.inverse(x));
  for (const FpLetter& base : {d.a, d.b}) {
    const Order o = d.fp.order(base);
    const long long top = o.isFinite() ? static_cast<long long>(o.value()) - 1 : static_cast<long long>(maxPower);
    for (long long k = 1; k <= top; ++k) {
      if (auto x = d.fp.power(base, k)) out.insert(*x);
      if (!o.isFinite())
        if (auto x = d.fp.power(base, -k)) out.insert(*x);
    }
  }
  return {out.begin(), out.end()};
}

// Dual-product reduction of g^{-1} x_1 .. x_s read cyclically; the result starts at the merged letter.
FpWord spliceReduce(const FreeProduct& fp, const FpWord& w2, const FpLetter& g) {
  const std::size_t s = w2.size();
  const FpLetter gi = fp.inverse(g);
  if (s == 1) return normalize(fp, {gi, w2[0]});
  std::size_t lo = 0, hi = s - 1;  // x_{lo+1}, x_{hi+1} in 1-based terms
  FpWord m = normalize(fp, {w2[hi], gi, w2[lo]});
  while (m.empty()) {
    ++lo;
    --hi;
    if (lo == hi) return {w2[lo]};
    m = normalize(fp, {w2[hi], w2[lo]});
  }
  FpWord out = m;
  for (std::size_t j = lo + 1; j < hi; ++j) out.push_back(w2[j]);
  return out;
}

struct Node {
  FpWord word;
  int parent = -1;
  RewriteStep step;
  std::size_t depth = 0;
};

enum class Terminal { None, Trivial, Nontrivial, NoOracle };

Terminal decide(const GtgDescription& d, const FpWord& w, const Oracles& o, std::string& why) {
  if (w.empty()) {
    why = "empty word";
    return Terminal::Trivial;
  }
  if (w.size() == 1) {
    why = "single letter; the factors embed";
    return Terminal::Nontrivial;
  }
  if (auto parse = parseForm(d, w)) {
    if (!o.h.complete()) {
      why = "word of H-form but the H table is incomplete";
      return Terminal::NoOracle;
    }
    if (isTrivialInH(o.h, syllableWord(parse->exps))) {
      why = "word of H-form, trivial in H";
      return Terminal::Trivial;
    }
    why = "word of H-form, nontrivial in H; H embeds";
    return Terminal::Nontrivial;
  }
  return Terminal::None;
}

void shiftDarts(std::vector<int>& ds, int by) {
  for (int& e : ds) e += by;
}

// Glues the clique of one rewrite onto the picture of its result.
Picture glue(const GtgDescription& d, const RewriteStep& st, const Picture& inner, std::size_t index) {
  const FreeProduct& fp = d.fp;
  const FpWord& w = st.before;
  const std::size_t N = w.size(), L = st.length, s = N - L;
  const FpWord w1 = cyclicSub(w, st.start, L);
  const FpWord w2 = cyclicSub(w, st.start + L, s);
  FpWord W = w1;
  W.push_back(st.g);
  Picture c = singleCliquePicture(W, fp);
  const std::string tag = std::to_string(index);
  c.vertices[0].name = "K" + tag;

  if (st.after.empty()) {
    // g cancels x_1 exactly, so the clique alone bounds w
    for (std::size_t j = 0; j < c.arcNames.size(); ++j) c.arcNames[j] = "c" + tag + "_" + std::to_string(j + 1);
    Picture p = c;
    const std::size_t k = (N - st.start) % N;
    std::rotate(p.boundary.begin(), p.boundary.begin() + static_cast<std::ptrdiff_t>(k), p.boundary.end());
    std::rotate(p.boundarySegments.begin(), p.boundarySegments.begin() + static_cast<std::ptrdiff_t>(k),
                p.boundarySegments.end());
    return p;
  }

  // cascade depth t: m_t = x_{s-t} x_{t+1} is the first letter of st.after
  std::size_t t = 0;
  if (s > 1) {
    FpWord m = normalize(fp, {w2[s - 1], fp.inverse(st.g), w2[0]});
    while (m.empty()) {
      ++t;
      m = normalize(fp, {w2[s - 1 - t], w2[t]});
    }
  }

  Picture p = inner;
  if (p.boundary.empty()) throw Error(ErrorCode::TheoremViolation, "certificate has no boundary to glue onto");
  const int base = static_cast<int>(p.arcCount());
  for (std::size_t j = 0; j < c.arcNames.size(); ++j) p.arcNames.push_back("c" + tag + "_" + std::to_string(j + 1));
  shiftDarts(c.vertices[0].darts, 2 * base);
  shiftDarts(c.boundary, 2 * base);
  p.vertices.push_back(c.vertices[0]);
  std::vector<int> loop(t + 1);
  for (std::size_t j = 1; j <= t; ++j) {
    loop[j] = static_cast<int>(p.arcCount());
    p.arcNames.push_back("l" + tag + "_" + std::to_string(j));
  }

  std::vector<int> bd{p.boundary[0]};
  std::vector<FpWord> segs{{w2[s - 1 - t]}};
  for (std::size_t j = t; j >= 1; --j) {
    bd.push_back(2 * loop[j]);
    segs.push_back({w2[s - j]});
  }
  for (std::size_t j = 0; j <= L; ++j) {
    bd.push_back(c.boundary[j]);
    segs.push_back(j < L ? c.boundarySegments[j] : FpWord{w2[0]});
  }
  for (std::size_t j = 1; j <= t; ++j) {
    bd.push_back(2 * loop[j] + 1);
    segs.push_back({w2[j]});
  }
  bd.insert(bd.end(), p.boundary.begin() + 1, p.boundary.end());
  segs.insert(segs.end(), p.boundarySegments.begin() + 1, p.boundarySegments.end());
  p.boundary = std::move(bd);
  p.boundarySegments = std::move(segs);

  // p now reads w from x_{s-t}, i.e. from position start + L + s - 1 - t
  const std::size_t o = (st.start + L + s - 1 - t) % N;
  const std::size_t k = (N - o) % N;
  std::rotate(p.boundary.begin(), p.boundary.begin() + static_cast<std::ptrdiff_t>(k), p.boundary.end());
  std::rotate(p.boundarySegments.begin(), p.boundarySegments.begin() + static_cast<std::ptrdiff_t>(k),
              p.boundarySegments.end());
  return p;
}

Picture certificate(const GtgDescription& d, const FpWord& terminal, const std::vector<RewriteStep>& steps) {
  Picture p;
  if (!terminal.empty()) {
    p = singleCliquePicture(terminal, d.fp);
    p.vertices[0].name = "K" + std::to_string(steps.size() + 1);
  }
  for (std::size_t i = steps.size(); i-- > 0;) p = glue(d, steps[i], p, i + 1);
  return p;
}

}  // namespace

SolveResult boundedWordProblem(const GtgDescription& d, const FpWord& w, const SearchBudget& budget,
                               const Oracles& oracles) {
  if (!oracles.tag) throw Error(ErrorCode::HypothesisFail, "neither hypothesis A nor B holds");
  if (!oracles.maximal) throw Error(ErrorCode::NotMaximal, "the description admits a refinement");
  const auto t0 = Clock::now();
  SolveResult res;
  res.reduced = cyclicReduce(d.fp, normalize(d.fp, w)).core;
  res.labelBound = budget.labelBound(d, res.reduced.size());
  const std::size_t l = d.l();
  const auto cands = gCandidates(d, res.labelBound);

  std::vector<Node> nodes{{res.reduced, -1, {}, 0}};
  std::set<FpWord> seen{rotate(res.reduced, leastRotation(res.reduced))};
  std::deque<int> queue{0};
  std::string cap;
  auto noteCap = [&](const char* c) {
    if (cap.empty()) cap = c;
  };

  auto finish = [&](Verdict v, int at, const std::string& why) {
    res.verdict = v;
    res.reason = why;
    for (int i = at; i > 0; i = nodes[static_cast<std::size_t>(i)].parent)
      res.steps.push_back(nodes[static_cast<std::size_t>(i)].step);
    std::reverse(res.steps.begin(), res.steps.end());
    if (v == Verdict::Trivial) {
      Picture p = certificate(d, nodes[static_cast<std::size_t>(at)].word, res.steps);
      p.declaredLabel = res.reduced;
      const auto rep = validate(p, d, oracles.h.complete() ? &oracles.h : nullptr);
      if (!rep.ok())
        throw Error(ErrorCode::TheoremViolation,
                    "certificate fails validation: " + rep.violations.front().code + " " + rep.violations.front().detail);
      res.certificate = std::move(p);
    }
  };

  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    const Node cur = nodes[static_cast<std::size_t>(id)];
    std::string why;
    switch (decide(d, cur.word, oracles, why)) {
      case Terminal::Trivial: finish(Verdict::Trivial, id, why); break;
      case Terminal::Nontrivial: finish(Verdict::Nontrivial, id, why); break;
      case Terminal::NoOracle: noteCap("oracle"); continue;
      case Terminal::None: break;
    }
    if (res.verdict != Verdict::Inconclusive) break;

    if (Clock::now() - t0 > budget.timeLimit) {
      noteCap("timeLimit");
      break;
    }
    const FpWord& x = cur.word;
    const std::size_t N = x.size();
    for (std::size_t start = 0; start < N; ++start) {
      for (std::size_t L = l - 1; L + 1 <= N; L += l) {
        const FpWord w1 = cyclicSub(x, start, L);
        for (const auto& g : cands) {
          if (g.factor == w1.front().factor) continue;
          FpWord z = w1;
          z.push_back(g);
          const auto parse = parseForm(d, z);
          if (!parse) continue;
          if (!oracles.h.complete()) {
            noteCap("oracle");
            continue;
          }
          if (!isTrivialInH(oracles.h, syllableWord(parse->exps))) continue;
          if (L + 1 > res.labelBound) {
            noteCap("maxLabelLength");
            continue;
          }
          if (cur.depth >= budget.maxCliques) {
            noteCap("maxCliques");
            continue;
          }
          FpWord next = spliceReduce(d.fp, cyclicSub(x, start + L, N - L), g);
          if (!seen.insert(rotate(next, leastRotation(next))).second) continue;
          if (nodes.size() >= budget.maxGraphs) {
            noteCap("maxGraphs");
            continue;
          }
          nodes.push_back({next, id, {x, start, L, g, next}, cur.depth + 1});
          queue.push_back(static_cast<int>(nodes.size() - 1));
        }
      }
    }
  }

  res.wordsVisited = nodes.size();
  if (res.verdict == Verdict::Inconclusive) {
    res.cap = cap.empty() ? "exhausted" : cap;
    res.reason = cap.empty() ? "no subword reduction applies; the reductions found do not decide w"
                             : "search stopped by " + cap;
  }
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return res;
}

WeinbaumReport weinbaumCheck(const GtgDescription& d, const FpWord& w1, const FpWord& w2, const SearchBudget& budget,
                             const Oracles& oracles) {
  const FpWord rn = label(d);
  if (w1.empty() || w2.empty()) throw Error(ErrorCode::BadSplit, "both parts must be nonempty");
  FpWord joined = w1;
  joined.insert(joined.end(), w2.begin(), w2.end());
  if (!cyclicallyEqual(joined, rn)) throw Error(ErrorCode::BadSplit, "W1 W2 is not a cyclic permutation of R^n");
  WeinbaumReport rep;
  rep.first = boundedWordProblem(d, w1, budget, oracles);
  rep.second = boundedWordProblem(d, w2, budget, oracles);
  if (rep.first.verdict == Verdict::Trivial || rep.second.verdict == Verdict::Trivial)
    rep.verdict = Verdict::Trivial;
  else if (rep.first.verdict == Verdict::Nontrivial && rep.second.verdict == Verdict::Nontrivial)
    rep.verdict = Verdict::Nontrivial;
  return rep;
}

std::vector<SolveResult> relatorOrderCheck(const GtgDescription& d, const SearchBudget& budget, const Oracles& oracles) {
  std::vector<SolveResult> out;
  const FpWord r = relator(d);
  FpWord rm;
  for (int m = 1; m < d.n; ++m) {
    rm.insert(rm.end(), r.begin(), r.end());
    out.push_back(boundedWordProblem(d, rm, budget, oracles));
  }
  return out;
}

FreiheitssatzReport freiheitssatzProbe(const GtgDescription& d, std::size_t maxLen, const SearchBudget& budget,
                                       const Oracles& oracles) {
  FreiheitssatzReport rep;
  auto run = [&](const std::string& what, const FpWord& w) {
    ++rep.checked;
    const auto r = boundedWordProblem(d, w, budget, oracles);
    ProbeItem item{what, w, r.verdict};
    if (r.verdict == Verdict::Trivial) rep.violations.push_back(item);
    if (r.verdict == Verdict::Inconclusive) rep.inconclusive.push_back(item);
  };

  for (int f = 1; f <= 2; ++f) {
    const FactorGroup& g = d.fp.factor(f);
    std::vector<Elem> elems;
    if (auto all = g.elements()) {
      elems = *all;
    } else if (g.isCyclic()) {
      for (long long k = 1; k <= static_cast<long long>(maxLen); ++k) {
        elems.push_back(static_cast<Elem>(k));
        elems.push_back(static_cast<Elem>(-k));
      }
    }
    for (Elem e : elems) {
      if (g.isIdentity(e)) {
        ++rep.skipped;
        continue;
      }
      const FpLetter x = d.fp.letter(f, e);
      run("f" + std::to_string(f) + ":" + g.format(e), {x});
    }
  }

  if (!oracles.h.complete()) return rep;
  const Order p = d.p(), q = d.q();
  auto range = [&](const Order& o) {
    std::vector<long long> r;
    const long long top = o.isFinite() ? static_cast<long long>(o.value()) - 1 : static_cast<long long>(maxLen);
    for (long long k = 1; k <= top; ++k) r.push_back(k);
    if (!o.isFinite())
      for (long long k = 1; k <= top; ++k) r.push_back(-k);
    return r;
  };
  const auto as = range(p), bs = range(q);
  // syllable words x^a1 y^b1 ... x^ak y^bk; each syllable counts one letter
  std::vector<ExpPair> exps;
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (exps.size() == k) {
      if (isTrivialInH(oracles.h, syllableWord(exps))) {
        ++rep.skipped;
        return;
      }
      std::string name = "H:";
      for (const auto& e : exps) name += " x^" + std::to_string(e.alpha) + " y^" + std::to_string(e.beta);
      run(name, hWordImage(d, exps));
      return;
    }
    for (long long a : as)
      for (long long b : bs) {
        exps.push_back({a, b});
        self(self, k);
        exps.pop_back();
      }
  };
  for (std::size_t k = 1; 2 * k <= maxLen; ++k) rec(rec, k);
  return rep;
}

}  // namespace orp
