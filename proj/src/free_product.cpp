#include "orp/free_product.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace orp {

std::string_view decisionName(Decision d) {
  switch (d) {
    case Decision::Yes: return "yes";
    case Decision::No: return "no";
    case Decision::Undecided: return "undecided";
  }
  return "undecided";
}

namespace {

long long parseInt(std::string_view s, std::string_view what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw Error(ErrorCode::Parse, "bad integer '" + std::string(s) + "' in " + std::string(what));
  return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// FactorGroup

std::optional<long long> FactorGroup::discreteLog(Elem x, Elem g) const {
  const Order o = elementOrder(g);
  if (o.isInfinite()) return std::nullopt;
  Elem acc = identity();
  for (int k = 0; k < o.value(); ++k) {
    if (acc == x) return k;
    acc = multiply(acc, g);
  }
  return std::nullopt;
}

Elem FactorGroup::power(Elem g, long long k) const {
  if (k < 0) {
    g = invert(g);
    k = -k;
  }
  Elem result = identity();
  Elem base = g;
  while (k > 0) {
    if (k & 1) result = multiply(result, base);
    base = multiply(base, base);
    k >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// CyclicGroup

CyclicGroup::CyclicGroup(Order order) : order_(order) {
  if (order.isFinite() && order.value() < 1)
    throw Error(ErrorCode::InvalidDescription, "cyclic group order must be positive");
}

Elem CyclicGroup::reduce(Elem e) const {
  if (order_.isInfinite()) return e;
  const Elem m = order_.value();
  return ((e % m) + m) % m;
}

Order CyclicGroup::elementOrder(Elem g) const {
  g = reduce(g);
  if (order_.isInfinite()) return g == 0 ? Order::finite(1) : Order::infinite();
  const long long m = order_.value();
  return Order::finite(static_cast<int>(m / std::gcd(m, static_cast<long long>(g))));
}

std::optional<std::vector<Elem>> CyclicGroup::elements() const {
  if (order_.isInfinite()) return std::nullopt;
  std::vector<Elem> out(static_cast<std::size_t>(order_.value()));
  std::iota(out.begin(), out.end(), Elem{0});
  return out;
}

std::optional<long long> CyclicGroup::discreteLog(Elem x, Elem g) const {
  x = reduce(x);
  g = reduce(g);
  if (order_.isInfinite()) {
    if (g == 0) return x == 0 ? std::optional<long long>(0) : std::nullopt;
    if (x % g != 0) return std::nullopt;
    return x / g;
  }
  return FactorGroup::discreteLog(x, g);
}

std::string CyclicGroup::format(Elem g) const {
  g = reduce(g);
  if (g == 0) return "1";
  if (g == 1) return "c";
  return "c^" + std::to_string(g);
}

Elem CyclicGroup::parse(std::string_view token) const {
  if (token == "1") return 0;
  if (token.empty() || token[0] != 'c') throw Error(ErrorCode::Parse, "cyclic element must look like c^k: " + std::string(token));
  if (token.size() == 1) return reduce(1);
  if (token[1] != '^') throw Error(ErrorCode::Parse, "cyclic element must look like c^k: " + std::string(token));
  return reduce(parseInt(token.substr(2), "cyclic exponent"));
}

std::string CyclicGroup::describe() const {
  return "cyclic " + (order_.isInfinite() ? std::string("0") : std::to_string(order_.value()));
}

// ---------------------------------------------------------------------------
// PermutationGroup

namespace {

PermutationGroup::Perm compose(const PermutationGroup::Perm& g, const PermutationGroup::Perm& h) {
  // apply g, then h
  PermutationGroup::Perm out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = h[static_cast<std::size_t>(g[i])];
  return out;
}

}  // namespace

PermutationGroup::PermutationGroup(int degree, std::vector<Perm> generators, std::size_t maxOrder)
    : degree_(degree), generators_(std::move(generators)) {
  if (degree < 1) throw Error(ErrorCode::InvalidDescription, "permutation degree must be positive");
  for (const auto& g : generators_) {
    if (g.size() != static_cast<std::size_t>(degree))
      throw Error(ErrorCode::InvalidDescription, "generator image list has wrong length");
    std::vector<int> sorted(g);
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < degree; ++i)
      if (sorted[static_cast<std::size_t>(i)] != i)
        throw Error(ErrorCode::InvalidDescription, "generator is not a permutation");
  }
  Perm id(static_cast<std::size_t>(degree));
  std::iota(id.begin(), id.end(), 0);
  std::map<Perm, Elem> seen;
  perms_.push_back(id);
  shortest_.push_back("1");
  seen.emplace(id, 0);
  for (std::size_t head = 0; head < perms_.size(); ++head) {
    for (std::size_t gi = 0; gi < generators_.size(); ++gi) {
      Perm next = compose(perms_[head], generators_[gi]);
      if (seen.contains(next)) continue;
      if (perms_.size() >= maxOrder) throw Error(ErrorCode::InvalidDescription, "permutation group too large");
      const std::string gname = "g" + std::to_string(gi + 1);
      shortest_.push_back(head == 0 ? gname : shortest_[head] + "*" + gname);
      seen.emplace(next, static_cast<Elem>(perms_.size()));
      perms_.push_back(std::move(next));
    }
  }
  sorted_.assign(seen.begin(), seen.end());
  for (const auto& g : generators_) generatorIndex_.push_back(indexOf(g));
}

Elem PermutationGroup::indexOf(const Perm& p) const {
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), p,
                             [](const auto& entry, const Perm& key) { return entry.first < key; });
  if (it == sorted_.end() || it->first != p) throw Error(ErrorCode::InvalidDescription, "permutation not in group");
  return it->second;
}

Elem PermutationGroup::multiply(Elem g, Elem h) const { return indexOf(compose(permutation(g), permutation(h))); }

Elem PermutationGroup::invert(Elem g) const {
  const Perm& p = permutation(g);
  Perm inv(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return indexOf(inv);
}

Order PermutationGroup::elementOrder(Elem g) const {
  int k = 1;
  Elem acc = g;
  while (acc != 0) {
    acc = multiply(acc, g);
    ++k;
  }
  return Order::finite(k);
}

std::optional<std::vector<Elem>> PermutationGroup::elements() const {
  std::vector<Elem> out(perms_.size());
  std::iota(out.begin(), out.end(), Elem{0});
  return out;
}

std::string PermutationGroup::format(Elem g) const { return shortest_.at(static_cast<std::size_t>(g)); }

Elem PermutationGroup::parse(std::string_view token) const {
  Elem acc = identity();
  if (token == "1") return acc;
  std::size_t pos = 0;
  while (pos <= token.size()) {
    const std::size_t star = token.find('*', pos);
    std::string_view part = token.substr(pos, star == std::string_view::npos ? std::string_view::npos : star - pos);
    long long exp = 1;
    if (const auto caret = part.find('^'); caret != std::string_view::npos) {
      exp = parseInt(part.substr(caret + 1), "permutation exponent");
      part = part.substr(0, caret);
    }
    if (part.size() < 2 || part[0] != 'g') throw Error(ErrorCode::Parse, "permutation element must be a word in g1, g2, ...");
    const long long gi = parseInt(part.substr(1), "generator index");
    if (gi < 1 || static_cast<std::size_t>(gi) > generators_.size())
      throw Error(ErrorCode::Parse, "generator index out of range: " + std::string(part));
    acc = multiply(acc, power(generator(static_cast<std::size_t>(gi - 1)), exp));
    if (star == std::string_view::npos) break;
    pos = star + 1;
  }
  return acc;
}

std::string PermutationGroup::describe() const {
  std::string out = "perm " + std::to_string(degree_);
  for (const auto& g : generators_) {
    out += " ";
    for (std::size_t i = 0; i < g.size(); ++i) out += (i ? "," : "") + std::to_string(g[i] + 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// FreeProduct

FpLetter FreeProduct::letter(int f, Elem e) const {
  if (f != 1 && f != 2) throw Error(ErrorCode::Parse, "factor index must be 1 or 2");
  if (factor(f).isIdentity(e)) throw Error(ErrorCode::IdentityLetter, "identity element used as a letter");
  return {f, e};
}

std::optional<FpLetter> FreeProduct::power(const FpLetter& x, long long k) const {
  const Elem e = factor(x.factor).power(x.element, k);
  if (factor(x.factor).isIdentity(e)) return std::nullopt;
  return FpLetter{x.factor, e};
}

std::string FreeProduct::format(const FpLetter& x) const {
  return "f" + std::to_string(x.factor) + ":" + factor(x.factor).format(x.element);
}

std::string FreeProduct::format(const FpWord& w) const {
  std::string out;
  for (const auto& x : w) {
    if (!out.empty()) out += ' ';
    out += format(x);
  }
  return out;
}

FpWord normalize(const FreeProduct& fp, const FpWord& raw) {
  FpWord stack;
  for (const auto& x : raw) {
    const auto& g = fp.factor(x.factor);
    if (g.isIdentity(x.element)) continue;
    if (!stack.empty() && stack.back().factor == x.factor) {
      const Elem merged = g.multiply(stack.back().element, x.element);
      if (g.isIdentity(merged))
        stack.pop_back();
      else
        stack.back().element = merged;
    } else {
      stack.push_back(x);
    }
  }
  return stack;
}

FpWord inverse(const FreeProduct& fp, const FpWord& w) { return involute(w, fp.involution()); }

FpWord multiply(const FreeProduct& fp, const FpWord& u, const FpWord& v) {
  FpWord all(u);
  all.insert(all.end(), v.begin(), v.end());
  return normalize(fp, all);
}

bool isReduced(const FpWord& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i].factor == w[i + 1].factor) return false;
  return true;
}

bool isCyclicallyReduced(const FpWord& w) {
  return isReduced(w) && (w.size() <= 1 || w.front().factor != w.back().factor);
}

CyclicReduction cyclicReduce(const FreeProduct& fp, const FpWord& w) {
  CyclicReduction r{normalize(fp, w), {}};
  auto& core = r.core;
  while (core.size() >= 2 && core.front().factor == core.back().factor) {
    const FpLetter g = core.front();
    const FpLetter h = core.back();
    r.conjugator.push_back(g);
    core.erase(core.begin());
    core.pop_back();
    const Elem hg = fp.factor(g.factor).multiply(h.element, g.element);
    if (!fp.factor(g.factor).isIdentity(hg)) {
      core.push_back({g.factor, hg});
      break;
    }
  }
  return r;
}

bool hasOrderTwoLetter(const FreeProduct& fp, const FpWord& w) {
  return std::any_of(w.begin(), w.end(), [&](const FpLetter& x) { return fp.order(x).is(2); });
}

std::optional<std::vector<Elem>> subgroupClosure(const FactorGroup& g, const std::vector<Elem>& gens) {
  for (Elem x : gens)
    if (g.elementOrder(x).isInfinite()) return std::nullopt;
  std::set<Elem> seen{g.identity()};
  std::deque<Elem> queue{g.identity()};
  while (!queue.empty()) {
    const Elem cur = queue.front();
    queue.pop_front();
    for (Elem x : gens) {
      const Elem next = g.multiply(cur, x);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return std::vector<Elem>(seen.begin(), seen.end());
}

Decision admissible(const FreeProduct& fp, const FpLetter& a, const FpLetter& b) {
  if (a.factor != b.factor) return Decision::Yes;
  const FactorGroup& g = fp.factor(a.factor);
  if (g.isCyclic()) return Decision::Yes;  // every subgroup of a cyclic group is cyclic
  const auto sub = subgroupClosure(g, {a.element, b.element});
  if (!sub) return Decision::Undecided;
  for (Elem c : *sub)
    if (g.elementOrder(c).is(static_cast<int>(sub->size()))) return Decision::Yes;
  const auto powersA = subgroupClosure(g, {a.element});
  for (Elem x : *powersA)
    if (!g.isIdentity(x) && g.isPowerOf(x, b.element)) return Decision::No;
  return Decision::Yes;
}

std::optional<FpLetter> commonRoot(const FreeProduct& fp, const FpLetter& a, const FpLetter& b) {
  if (a.factor != b.factor) return std::nullopt;
  const FactorGroup& g = fp.factor(a.factor);
  if (const auto* cyc = dynamic_cast<const CyclicGroup*>(&g); cyc && cyc->order().isInfinite()) {
    const Elem root = std::gcd(a.element, b.element);
    return FpLetter{a.factor, root};
  }
  const auto all = g.elements();
  if (!all) return std::nullopt;
  std::optional<FpLetter> best;
  int bestOrder = 0;
  for (Elem c : *all) {
    if (g.isIdentity(c) || !g.isPowerOf(a.element, c) || !g.isPowerOf(b.element, c)) continue;
    const int o = g.elementOrder(c).value();
    if (o > bestOrder) {
      bestOrder = o;
      best = FpLetter{a.factor, c};
    }
  }
  return best;
}

}  // namespace orp
