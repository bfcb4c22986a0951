#pragma once

// Triviality oracles for H = <x, y | x^p, y^q, R'(x,y)^n>, R' = prod x^{alpha_i} y^{beta_i}:
// a PSL(2,C) representation with trace-based orders, and Felsch coset enumeration.

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "orp/gtg.hpp"

namespace orp {

using Mat2C = Eigen::Matrix2cd;

constexpr double kTraceEps = 1e-9;

struct TriangleRep {
  Mat2C X;
  Mat2C Y;
  double t = 0;
};

/// X = [[e^{i pi/p}, 0], [1, e^{-i pi/p}]], Y = [[e^{i pi/q}, t], [0, e^{-i pi/q}]] with
/// t = -2 cos(pi/p + pi/q), so that Tr(XY) = 0. Needs p, q >= 3.
TriangleRep buildRep(int p, int q);

/// Least m <= mMax with +-Tr(M) = 2cos(delta pi/m), gcd(delta, m) = 1; 1 for +-I; nullopt if none.
std::optional<int> psl2Order(const Mat2C& m, int mMax = 100, double eps = kTraceEps);

// Words in x, y are sequences over these four generators.
enum Gen : int { GenX = 0, GenXInv = 1, GenY = 2, GenYInv = 3 };
using TriWord = std::vector<int>;

constexpr int invGen(int g) { return g ^ 1; }

TriWord xPow(long long e);
TriWord yPow(long long e);
TriWord inverse(const TriWord& w);
std::string format(const TriWord& w);
/// Tokens like "x", "y^-2", "X" (x^-1), separated by spaces or '*'.
TriWord parseTriWord(const std::string& text);

struct TrianglePresentation {
  Order p = Order::finite(2);
  Order q = Order::finite(3);
  std::vector<ExpPair> exps;  // R' = prod x^{alpha_i} y^{beta_i}
  int n = 2;

  std::size_t k() const { return exps.size(); }
};

void validate(const TrianglePresentation& pres);
TriWord relatorBase(const TrianglePresentation& pres);  // R'
TriWord syllableWord(const std::vector<ExpPair>& exps);  // prod x^{alpha_i} y^{beta_i}
TriWord relatorWord(const TrianglePresentation& pres);  // R'^n
/// <x,y | x^p, y^q, (xy)^r>
TrianglePresentation triangle(int p, int q, int r);
/// The generalised triangle group inducing G through d.
TrianglePresentation presentationOf(const GtgDescription& d);
/// "p=3 q=3 n=2 exps=(1,1)(1,2)"
std::string format(const TrianglePresentation& pres);
TrianglePresentation parsePresentation(const std::string& text);

Mat2C evaluate(const TriangleRep& rep, const TriWord& w);

enum class TableStatus { Complete, Exceeded };

struct CosetTable {
  TableStatus status = TableStatus::Exceeded;
  std::size_t bound = 0;
  TrianglePresentation pres;
  std::vector<std::array<int, 4>> rows;  // complete tables only, coset 0 is the subgroup

  bool complete() const { return status == TableStatus::Complete; }
  std::size_t order() const { return rows.size(); }
  int act(int coset, const TriWord& w) const;
};

/// Felsch-style enumeration of the cosets of the trivial subgroup.
CosetTable toddCoxeter(const TrianglePresentation& pres, std::size_t maxCosets);

/// Every relator closes at every coset and the action is transitive.
bool checkTable(const CosetTable& table);

/// Throws OracleUnavailable unless the table is complete.
bool isTrivialInH(const CosetTable& table, const TriWord& w);
Order elementOrder(const CosetTable& table, const TriWord& w);

std::string dump(const CosetTable& table);

struct Prop1Report {
  bool skipped = false;  // 2 in {p, q}
  std::size_t checked = 0;
  std::vector<std::array<long long, 4>> trivial;
  std::vector<std::array<long long, 4>> unexpected;
};

/// Brute force over x^a y^b x^c y^d in <x,y | x^p, y^q, (xy)^2>.
Prop1Report verifyProp1(int p, int q, const CosetTable& table);

struct SpellingReport {
  std::size_t checked = 0;
  bool truncated = false;
  std::vector<TriWord> trivial;  // counterexamples, expected empty
};

/// Every prod_{i<=l} x^{g_i} y^{d_i} with l < k r must be nontrivial.
SpellingReport verifySpelling(const TrianglePresentation& pres, const CosetTable& table,
                              std::size_t maxCandidates = 10'000'000);

}  // namespace orp
