#pragma once

// Words in a free product G1 * G2 of two factor groups, each accessed through a
// word-problem oracle.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "orp/word.hpp"

namespace orp {

using Elem = std::int64_t;

enum class Decision { Yes, No, Undecided };

std::string_view decisionName(Decision d);

/// Oracle interface for a factor group. Implementations answer every query.
class FactorGroup {
 public:
  virtual ~FactorGroup() = default;

  virtual Elem identity() const = 0;
  virtual Elem multiply(Elem g, Elem h) const = 0;
  virtual Elem invert(Elem g) const = 0;
  virtual Order elementOrder(Elem g) const = 0;
  /// Full element list for finite groups; nullopt when the group cannot be enumerated.
  virtual std::optional<std::vector<Elem>> elements() const = 0;
  /// True when the whole group is known to be cyclic (finite or infinite).
  virtual bool isCyclic() const { return false; }
  /// k with g^k == x, if any. The default enumerates powers of a finite-order g.
  virtual std::optional<long long> discreteLog(Elem x, Elem g) const;

  virtual std::string format(Elem g) const = 0;
  virtual Elem parse(std::string_view token) const = 0;
  /// Declaration body, e.g. "cyclic 6".
  virtual std::string describe() const = 0;

  bool isIdentity(Elem g) const { return g == identity(); }
  Elem power(Elem g, long long k) const;
  bool isPowerOf(Elem x, Elem g) const { return discreteLog(x, g).has_value(); }
};

/// C_m = <c>, or the infinite cyclic group. Elements are exponents of c.
class CyclicGroup final : public FactorGroup {
 public:
  explicit CyclicGroup(Order order);

  Elem identity() const override { return 0; }
  Elem multiply(Elem g, Elem h) const override { return reduce(g + h); }
  Elem invert(Elem g) const override { return reduce(-g); }
  Order elementOrder(Elem g) const override;
  std::optional<std::vector<Elem>> elements() const override;
  bool isCyclic() const override { return true; }
  std::optional<long long> discreteLog(Elem x, Elem g) const override;
  std::string format(Elem g) const override;
  Elem parse(std::string_view token) const override;
  std::string describe() const override;

  Order order() const { return order_; }
  Elem reduce(Elem e) const;

 private:
  Order order_;
};

/// Permutation group of a given degree generated by explicit images.
/// Elements are indices into the enumerated group; index 0 is the identity.
class PermutationGroup final : public FactorGroup {
 public:
  using Perm = std::vector<int>;

  /// Generators as image lists of {0..degree-1}. Enumeration stops past maxOrder.
  PermutationGroup(int degree, std::vector<Perm> generators, std::size_t maxOrder = 200000);

  Elem identity() const override { return 0; }
  Elem multiply(Elem g, Elem h) const override;
  Elem invert(Elem g) const override;
  Order elementOrder(Elem g) const override;
  std::optional<std::vector<Elem>> elements() const override;
  std::string format(Elem g) const override;
  Elem parse(std::string_view token) const override;
  std::string describe() const override;

  std::size_t size() const { return perms_.size(); }
  const Perm& permutation(Elem g) const { return perms_.at(static_cast<std::size_t>(g)); }
  Elem indexOf(const Perm& p) const;
  Elem generator(std::size_t i) const { return generatorIndex_.at(i); }
  std::size_t generatorCount() const { return generators_.size(); }

 private:
  int degree_;
  std::vector<Perm> generators_;
  std::vector<Perm> perms_;
  std::vector<Elem> generatorIndex_;
  std::vector<std::string> shortest_;  // shortest generator word per element
  std::vector<std::pair<Perm, Elem>> sorted_;
};

/// A nonidentity element of factor 1 or 2.
struct FpLetter {
  int factor = 1;
  Elem element = 0;

  friend auto operator<=>(const FpLetter&, const FpLetter&) = default;
};

using FpWord = std::vector<FpLetter>;

class FreeProduct {
 public:
  FreeProduct(std::shared_ptr<const FactorGroup> g1, std::shared_ptr<const FactorGroup> g2)
      : factors_{std::move(g1), std::move(g2)} {}

  const FactorGroup& factor(int i) const { return *factors_.at(static_cast<std::size_t>(i - 1)); }
  std::shared_ptr<const FactorGroup> factorPtr(int i) const { return factors_.at(static_cast<std::size_t>(i - 1)); }

  /// Throws IdentityLetter for the identity element.
  FpLetter letter(int factor, Elem element) const;
  FpLetter inverse(const FpLetter& x) const { return {x.factor, factor(x.factor).invert(x.element)}; }
  Order order(const FpLetter& x) const { return factor(x.factor).elementOrder(x.element); }
  /// x^k, or nullopt when it is the identity.
  std::optional<FpLetter> power(const FpLetter& x, long long k) const;
  bool isPowerOf(const FpLetter& x, const FpLetter& g) const {
    return x.factor == g.factor && factor(x.factor).isPowerOf(x.element, g.element);
  }
  std::optional<long long> exponentOf(const FpLetter& x, const FpLetter& g) const {
    if (x.factor != g.factor) return std::nullopt;
    return factor(x.factor).discreteLog(x.element, g.element);
  }

  auto involution() const {
    return [this](const FpLetter& x) { return inverse(x); };
  }

  std::string format(const FpLetter& x) const;
  std::string format(const FpWord& w) const;

 private:
  std::array<std::shared_ptr<const FactorGroup>, 2> factors_;
};

/// Merges adjacent same-factor letters and deletes identities until reduced.
FpWord normalize(const FreeProduct& fp, const FpWord& raw);
FpWord inverse(const FreeProduct& fp, const FpWord& w);
FpWord multiply(const FreeProduct& fp, const FpWord& u, const FpWord& v);

bool isReduced(const FpWord& w);
bool isCyclicallyReduced(const FpWord& w);

struct CyclicReduction {
  FpWord core;
  FpWord conjugator;  // input == conjugator * core * conjugator^{-1}
};

CyclicReduction cyclicReduce(const FreeProduct& fp, const FpWord& w);

inline std::size_t freeProductLength(const FpWord& w) { return w.size(); }

/// Any letter of w whose order is 2.
bool hasOrderTwoLetter(const FreeProduct& fp, const FpWord& w);

/// Is the subgroup <a, b> of factor f cyclic, or <a> ∩ <b> trivial?
/// Letters in different factors are always admissible.
Decision admissible(const FreeProduct& fp, const FpLetter& a, const FpLetter& b);

/// A root c of maximal order with a, b in <c>; nullopt when none exists or undecidable.
std::optional<FpLetter> commonRoot(const FreeProduct& fp, const FpLetter& a, const FpLetter& b);

/// Elements of the subgroup generated by gens (finite factors only).
std::optional<std::vector<Elem>> subgroupClosure(const FactorGroup& g, const std::vector<Elem>& gens);

}  // namespace orp
