#pragma once

// Combinatorics on words over an alphabet with involution.
//
// The algorithms are free functions templated on the letter type so the same
// code serves abstract alphabets (Symbol) and free-product letters (FpLetter).
// Indices are 0-based; cyclic reads wrap modulo the word length.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "orp/error.hpp"

namespace orp {

/// Order of a group element. Infinite order is an explicit state.
class Order {
 public:
  static constexpr Order finite(int m) { return Order(m); }
  static constexpr Order infinite() { return Order(0); }

  constexpr bool isInfinite() const { return value_ == 0; }
  constexpr bool isFinite() const { return value_ != 0; }
  int value() const {
    if (isInfinite()) throw std::logic_error("Order::value() on infinite order");
    return value_;
  }
  constexpr bool is(int m) const { return value_ == m; }

  friend constexpr bool operator==(Order, Order) = default;

  std::string str() const { return isInfinite() ? "inf" : std::to_string(value_); }

 private:
  constexpr explicit Order(int v) : value_(v) {}
  int value_;
};

using Symbol = std::int32_t;
using Word = std::vector<Symbol>;

/// Finite alphabet with an order-respecting involution.
///
/// A symbol is self-inverse exactly when its order is 2.
class Alphabet {
 public:
  /// Adds a letter and its (distinct) involute, both of the given order.
  Symbol addPair(const std::string& name, const std::string& inverseName, Order order);
  /// Adds a self-inverse letter; these always have order 2.
  Symbol addSelfInverse(const std::string& name);

  Symbol inverse(Symbol s) const { return inverse_.at(static_cast<std::size_t>(s)); }
  Order order(Symbol s) const { return order_.at(static_cast<std::size_t>(s)); }
  const std::string& name(Symbol s) const { return names_.at(static_cast<std::size_t>(s)); }
  std::optional<Symbol> find(const std::string& name) const;
  std::size_t size() const { return names_.size(); }

  bool contains(Symbol s) const { return s >= 0 && static_cast<std::size_t>(s) < size(); }

  /// Involution as a function object, for the generic algorithms below.
  auto involution() const {
    return [this](Symbol s) { return inverse(s); };
  }

  std::string format(const Word& w) const;

 private:
  Symbol push(const std::string& name, Order order);

  std::vector<std::string> names_;
  std::vector<Symbol> inverse_;
  std::vector<Order> order_;
  std::unordered_map<std::string, Symbol> index_;
};

/// Consecutive letters of a parent word: `length` letters from `start`.
/// Cyclic segments may run past the end and wrap around.
struct Segment {
  std::size_t start = 0;
  std::size_t length = 0;
  bool cyclic = false;

  std::size_t end() const { return start + length; }  // one past the last index (unwrapped)
  friend bool operator==(const Segment&, const Segment&) = default;
};

template <class L>
std::vector<L> extract(const std::vector<L>& w, const Segment& seg) {
  const std::size_t n = w.size();
  if (!seg.cyclic && seg.start + seg.length > n)
    throw Error(ErrorCode::BadCover, "segment exceeds parent word");
  if (seg.cyclic && n == 0 && seg.length > 0)
    throw Error(ErrorCode::EmptyWord, "cyclic segment of empty word");
  std::vector<L> out;
  out.reserve(seg.length);
  for (std::size_t i = 0; i < seg.length; ++i) out.push_back(w[(seg.start + i) % n]);
  return out;
}

/// z_n^{-1} ... z_1^{-1}.
template <class L, class Inv>
std::vector<L> involute(const std::vector<L>& w, Inv inv) {
  std::vector<L> out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inv(*it));
  return out;
}

/// z_j z_{j+1} ... z_{j-1}.
template <class L>
std::vector<L> rotate(const std::vector<L>& w, std::size_t j) {
  std::vector<L> out(w);
  if (!out.empty()) std::rotate(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(j % out.size()), out.end());
  return out;
}

template <class L>
bool hasPeriod(const std::vector<L>& w, std::size_t gamma) {
  if (gamma == 0 || gamma > w.size()) return false;
  for (std::size_t i = 0; i + gamma < w.size(); ++i)
    if (!(w[i] == w[i + gamma])) return false;
  return true;
}

/// Every period of w, ascending. Always contains ℓ(w).
template <class L>
std::vector<std::size_t> periods(const std::vector<L>& w) {
  if (w.empty()) throw Error(ErrorCode::EmptyWord, "periods of the empty word");
  std::vector<std::size_t> out;
  for (std::size_t g = 1; g <= w.size(); ++g)
    if (hasPeriod(w, g)) out.push_back(g);
  return out;
}

template <class L>
std::size_t minimalPeriod(const std::vector<L>& w) {
  return periods(w).front();
}

/// Period ℓ(w) - ℓ(u) induced by a border u (a proper prefix that is also a suffix).
template <class L>
std::size_t borderPeriod(const std::vector<L>& w, const Segment& u) {
  const auto border = extract(w, u);
  const std::size_t n = w.size(), m = border.size();
  if (m >= n) throw Error(ErrorCode::NotABorder, "border must be proper");
  if (!std::equal(border.begin(), border.end(), w.begin()) ||
      !std::equal(border.begin(), border.end(), w.end() - static_cast<std::ptrdiff_t>(m)))
    throw Error(ErrorCode::NotABorder, "segment is not both an initial and terminal segment");
  const std::size_t gamma = n - m;
  if (!hasPeriod(w, gamma)) throw Error(ErrorCode::TheoremViolation, "border without induced period");
  return gamma;
}

/// Fine and Wilf: periods gamma, rho with ℓ(w) >= gamma + rho - gcd give period gcd.
template <class L>
std::optional<std::size_t> fineWilf(const std::vector<L>& w, std::size_t gamma, std::size_t rho) {
  if (!hasPeriod(w, gamma)) throw Error(ErrorCode::NotAPeriod, "gamma=" + std::to_string(gamma));
  if (!hasPeriod(w, rho)) throw Error(ErrorCode::NotAPeriod, "rho=" + std::to_string(rho));
  const std::size_t g = std::gcd(gamma, rho);
  if (w.size() + g < gamma + rho) return std::nullopt;
  if (!hasPeriod(w, g)) throw Error(ErrorCode::TheoremViolation, "Fine-Wilf period check failed");
  return g;
}

/// Period gcd(gamma, rho) of w from an initial segment w1 (period gamma) and a terminal
/// segment w2 (period rho) that overlap in at least gamma + rho - gcd letters.
template <class L>
std::optional<std::size_t> overlapPeriods(const std::vector<L>& w, const Segment& w1, std::size_t gamma,
                                          const Segment& w2, std::size_t rho) {
  const std::size_t n = w.size();
  if (w1.cyclic || w2.cyclic || w1.start != 0 || w2.end() != n || w1.end() > n || w2.start > n ||
      w1.end() < w2.start)
    throw Error(ErrorCode::BadCover, "need an initial and a terminal segment covering w");
  if (!hasPeriod(extract(w, w1), gamma)) throw Error(ErrorCode::NotAPeriod, "initial segment");
  if (!hasPeriod(extract(w, w2), rho)) throw Error(ErrorCode::NotAPeriod, "terminal segment");
  const std::size_t overlap = w1.end() - w2.start;
  const std::size_t g = std::gcd(gamma, rho);
  if (overlap + g < gamma + rho) return std::nullopt;
  if (!hasPeriod(w, g)) throw Error(ErrorCode::TheoremViolation, "overlap period check failed");
  return g;
}

/// w = u^t for a proper initial segment u.
template <class L>
bool isProperPower(const std::vector<L>& w) {
  for (std::size_t p = 1; p < w.size(); ++p)
    if (w.size() % p == 0 && hasPeriod(w, p)) return true;
  return false;
}

/// No cyclically adjacent pair z z^{-1}.
template <class L, class Inv>
bool isCyclicallyReduced(const std::vector<L>& w, Inv inv) {
  const std::size_t n = w.size();
  if (n == 0) return true;
  if (n == 1) return true;
  for (std::size_t i = 0; i < n; ++i)
    if (w[(i + 1) % n] == inv(w[i])) return false;
  return true;
}

template <class L, class Inv>
bool isReduced(const std::vector<L>& w, Inv inv) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i + 1] == inv(w[i])) return false;
  return true;
}

/// Start positions at which x occurs as a cyclic subword of w (ℓ(x) <= ℓ(w)).
template <class L>
std::vector<std::size_t> cyclicOccurrences(const std::vector<L>& w, const std::vector<L>& x) {
  std::vector<std::size_t> out;
  const std::size_t n = w.size();
  if (x.size() > n || n == 0) return out;
  for (std::size_t p = 0; p < n; ++p) {
    bool ok = true;
    for (std::size_t i = 0; i < x.size() && ok; ++i) ok = w[(p + i) % n] == x[i];
    if (ok) out.push_back(p);
  }
  return out;
}

/// Index of the lexicographically least rotation (first one on ties).
template <class L>
std::size_t leastRotation(const std::vector<L>& w) {
  const std::size_t n = w.size();
  std::size_t best = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      const L& a = w[(j + i) % n];
      const L& b = w[(best + i) % n];
      if (a < b) { best = j; break; }
      if (b < a) break;
    }
  }
  return best;
}

/// Rotation offsets j with rotate(w, j) == v.
template <class L>
std::vector<std::size_t> rotationOffsets(const std::vector<L>& w, const std::vector<L>& v) {
  if (w.size() != v.size()) return {};
  if (w.empty()) return {0};
  return cyclicOccurrences(w, v);
}

/// A word up to cyclic permutation, stored as its least rotation.
template <class L>
class CyclicWord {
 public:
  CyclicWord() = default;
  explicit CyclicWord(std::vector<L> w) : canonical_(rotate(w, leastRotation(w))) {}

  const std::vector<L>& canonical() const { return canonical_; }
  std::size_t size() const { return canonical_.size(); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
  friend bool operator<(const CyclicWord& a, const CyclicWord& b) { return a.canonical_ < b.canonical_; }

 private:
  std::vector<L> canonical_;
};

template <class L>
bool cyclicallyEqual(const std::vector<L>& a, const std::vector<L>& b) {
  return a.size() == b.size() && !rotationOffsets(a, b).empty();
}

enum class Nz2Case { Odd, Even };

/// Structure of a word x1 V1 y1 V1^{-1} having a proper rotation of the same shape:
///   Odd  : W = prod_{t<s} x1^{alpha_t} V3 y1^{beta_t} V3^{-1}, s odd
///   Even : W = prod_{t<s} x1^{alpha_t} V3 x2^{beta_t} V3^{-1}, s even
/// Exponents are +1 or -1, with the involution playing the role of inversion.
template <class L>
struct Nz2Decomposition {
  std::vector<L> v3;
  std::size_t m = 0;
  std::size_t s = 0;
  Nz2Case kind = Nz2Case::Odd;
  std::vector<int> alpha;
  std::vector<int> beta;
  L first{};   // x1
  L second{};  // y1 (odd) or x2 (even)
};

namespace detail {

/// W = x V y V^{-1} with ℓ(W) = 2k, read from offset j: z_{j+i} = z_{j-i}^{-1} for i = 1..k-1.
template <class L, class Inv>
bool hasMirrorShape(const std::vector<L>& w, std::size_t j, Inv inv) {
  const std::size_t n = w.size();
  const std::size_t k = n / 2;
  for (std::size_t i = 1; i < k; ++i)
    if (!(w[(j + i) % n] == inv(w[(j + n - i) % n]))) return false;
  return true;
}

template <class L, class Inv>
int signOf(const L& letter, const L& base, Inv inv) {
  if (letter == base) return 1;
  if (letter == inv(base)) return -1;
  throw Error(ErrorCode::TheoremViolation, "letter is not a power of the expected generator");
}

}  // namespace detail

template <class L, class Inv>
bool hasConjugateShape(const std::vector<L>& w, Inv inv) {
  return !w.empty() && w.size() % 2 == 0 && detail::hasMirrorShape(w, 0, inv);
}

/// Expands a decomposition back into a word.
template <class L, class Inv>
std::vector<L> expand(const Nz2Decomposition<L>& d, Inv inv) {
  const auto v3inv = involute(d.v3, inv);
  std::vector<L> out;
  for (std::size_t t = 0; t < d.s; ++t) {
    out.push_back(d.alpha[t] > 0 ? d.first : inv(d.first));
    out.insert(out.end(), d.v3.begin(), d.v3.end());
    out.push_back(d.beta[t] > 0 ? d.second : inv(d.second));
    out.insert(out.end(), v3inv.begin(), v3inv.end());
  }
  return out;
}

/// Decomposes a cyclically reduced W = x1 V1 y1 V1^{-1} whose rotation by j has the same shape.
template <class L, class Inv>
Nz2Decomposition<L> nz2Decompose(const std::vector<L>& w, std::size_t j, Inv inv) {
  const std::size_t n = w.size();
  if (n < 2 || n % 2 != 0 || !isCyclicallyReduced(w, inv))
    throw Error(ErrorCode::NotConjugateForm, "need a cyclically reduced word of even length");
  const std::size_t k = n / 2;
  if (j % k == 0) throw Error(ErrorCode::DegenerateOffset, "j must not be 0 mod k");
  j %= n;
  if (!detail::hasMirrorShape(w, 0, inv) || !detail::hasMirrorShape(w, j, inv))
    throw Error(ErrorCode::NotConjugateForm, "word or rotation is not of the form xVyV^{-1}");

  Nz2Decomposition<L> d;
  d.m = std::gcd(j, k);
  d.s = k / d.m;
  d.kind = d.s % 2 == 1 ? Nz2Case::Odd : Nz2Case::Even;
  d.v3.assign(w.begin() + 1, w.begin() + static_cast<std::ptrdiff_t>(d.m));
  d.first = w[0];
  d.second = d.kind == Nz2Case::Odd ? w[k] : w[j];
  for (std::size_t t = 0; t < d.s; ++t) {
    d.alpha.push_back(detail::signOf(w[2 * d.m * t], d.first, inv));
    d.beta.push_back(detail::signOf(w[2 * d.m * t + d.m], d.second, inv));
  }
  if (expand(d, inv) != w) throw Error(ErrorCode::TheoremViolation, "nz2 reconstruction mismatch");
  return d;
}

/// For cyclically reduced w of length 2m containing both x and x^{-1} (ℓ(x) = m) as cyclic
/// subwords, returns the middle letter of the self-involute overlap; it is self-inverse.
template <class L, class Inv>
L findOrder2InOverlap(const std::vector<L>& w, const std::vector<L>& x, Inv inv) {
  const std::size_t n = w.size();
  if (n == 0 || n % 2 != 0 || x.size() * 2 != n || !isCyclicallyReduced(w, inv))
    throw Error(ErrorCode::HypothesisFail, "need cyclically reduced w of length 2*len(x)");
  const auto xi = involute(x, inv);
  const auto px = cyclicOccurrences(w, x);
  const auto pxi = cyclicOccurrences(w, xi);
  if (px.empty() || pxi.empty()) throw Error(ErrorCode::HypothesisFail, "x or x^{-1} does not occur");
  const std::size_t m = x.size();
  const std::size_t d = (pxi.front() + n - px.front()) % n;
  if (d == m) throw Error(ErrorCode::TheoremViolation, "w is a cyclic conjugate of x x^{-1}");
  // Overlap Y: a terminal segment of x when x^{-1} starts inside x, otherwise an initial one.
  std::vector<L> y;
  if (d == 0) {
    y = x;
  } else if (d < m) {
    y.assign(x.begin() + static_cast<std::ptrdiff_t>(d), x.end());
  } else {
    y.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(d - m));
  }
  if (y.empty() || y.size() % 2 == 0 || involute(y, inv) != y)
    throw Error(ErrorCode::TheoremViolation, "overlap is not an odd self-involute word");
  const L middle = y[y.size() / 2];
  if (!(inv(middle) == middle)) throw Error(ErrorCode::TheoremViolation, "middle letter not self-inverse");
  return middle;
}

/// An occurrence of u r u^{-1} in a word: starts at `start`, ℓ(u) = uLength.
struct WrwOccurrence {
  std::size_t start = 0;
  std::size_t uLength = 0;
  friend bool operator==(const WrwOccurrence&, const WrwOccurrence&) = default;
};

/// All occurrences of u r u^{-1} (r a single letter) with 2ℓ(u) >= gamma, for w of period gamma.
template <class L, class Inv>
std::vector<WrwOccurrence> scanWrwInverse(const std::vector<L>& w, std::size_t gamma, Inv inv) {
  if (gamma >= w.size() || !hasPeriod(w, gamma))
    throw Error(ErrorCode::NotAPeriod, "gamma must be a period shorter than w");
  std::vector<WrwOccurrence> out;
  const std::size_t n = w.size();
  for (std::size_t c = 1; c + 1 < n; ++c) {
    std::size_t len = 0;
    while (len < c && c + len + 1 < n && w[c + len + 1] == inv(w[c - len - 1])) {
      ++len;
      if (2 * len >= gamma) out.push_back({c - len, len});
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.start != b.start ? a.start < b.start : a.uLength < b.uLength;
  });
  return out;
}

}  // namespace orp
