#include "orp/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <regex>

#include "orp/error.hpp"

namespace orp {

namespace {

using cd = std::complex<double>;

long long mod(long long a, long long m) { return ((a % m) + m) % m; }

TriWord power(int gen, long long e) {
  TriWord w;
  const int g = e >= 0 ? gen : invGen(gen);
  for (long long i = 0; i < std::llabs(e); ++i) w.push_back(g);
  return w;
}

int finiteValue(Order o, const char* what) {
  if (!o.isFinite()) throw Error(ErrorCode::UnsupportedOrder, std::string(what) + " must be finite");
  return static_cast<int>(o.value());
}

}  // namespace

TriangleRep buildRep(int p, int q) {
  if (p < 3 || q < 3) throw Error(ErrorCode::UnsupportedOrder, "representation needs p, q >= 3");
  const double pi = std::numbers::pi;
  TriangleRep rep;
  rep.t = -2 * std::cos(pi / p + pi / q);
  rep.X << std::polar(1.0, pi / p), 0, 1, std::polar(1.0, -pi / p);
  rep.Y << std::polar(1.0, pi / q), rep.t, 0, std::polar(1.0, -pi / q);
  return rep;
}

std::optional<int> psl2Order(const Mat2C& m, int mMax, double eps) {
  if (std::abs(m.determinant() - cd(1, 0)) > eps) throw Error(ErrorCode::BadMatrix, "matrix is not unimodular");
  const cd tr = m.trace();
  // +-I
  if (std::abs(m(0, 1)) < eps && std::abs(m(1, 0)) < eps && std::abs(m(0, 0) - m(1, 1)) < eps &&
      std::abs(std::abs(tr.real()) - 2) < eps)
    return 1;
  if (std::abs(tr.imag()) > eps) return std::nullopt;
  const double t = std::abs(tr.real());
  for (int k = 2; k <= mMax; ++k)
    for (int delta = 1; delta < k; ++delta) {
      if (std::gcd(delta, k) != 1) continue;
      if (std::abs(t - std::abs(2 * std::cos(delta * std::numbers::pi / k))) < eps) return k;
    }
  return std::nullopt;
}

TriWord xPow(long long e) { return power(GenX, e); }
TriWord yPow(long long e) { return power(GenY, e); }

TriWord inverse(const TriWord& w) {
  TriWord out(w.rbegin(), w.rend());
  for (auto& g : out) g = invGen(g);
  return out;
}

std::string format(const TriWord& w) {
  static const char* names[] = {"x", "X", "y", "Y"};
  std::string out;
  for (int g : w) out += names[g];
  return out.empty() ? "1" : out;
}

TriWord parseTriWord(const std::string& text) {
  static const std::regex tok(R"(\s*\*?\s*([xXyY1])(?:\^(-?\d+))?\s*)");
  TriWord w;
  auto it = text.cbegin();
  std::smatch m;
  while (it != text.cend()) {
    if (!std::regex_search(it, text.cend(), m, tok, std::regex_constants::match_continuous))
      throw Error(ErrorCode::Parse, "bad word '" + text + "'");
    it = m[0].second;
    const char c = m[1].str()[0];
    if (c == '1') continue;
    long long e = m[2].matched ? std::stoll(m[2].str()) : 1;
    if (c == 'X' || c == 'Y') e = -e;
    const TriWord piece = (c == 'x' || c == 'X') ? xPow(e) : yPow(e);
    w.insert(w.end(), piece.begin(), piece.end());
  }
  return w;
}

void validate(const TrianglePresentation& pres) {
  if (pres.n < 1) throw Error(ErrorCode::InvalidDescription, "n must be positive");
  if (pres.exps.empty()) throw Error(ErrorCode::InvalidDescription, "R' needs at least one syllable");
  for (Order o : {pres.p, pres.q})
    if (o.isFinite() && o.value() < 2) throw Error(ErrorCode::InvalidDescription, "orders must be at least 2");
  for (const auto& e : pres.exps) {
    if (pres.p.isFinite() && (e.alpha <= 0 || e.alpha >= pres.p.value()))
      throw Error(ErrorCode::InvalidDescription, "alpha out of range");
    if (pres.q.isFinite() && (e.beta <= 0 || e.beta >= pres.q.value()))
      throw Error(ErrorCode::InvalidDescription, "beta out of range");
    if (e.alpha == 0 || e.beta == 0) throw Error(ErrorCode::InvalidDescription, "zero exponent");
  }
}

TriWord relatorBase(const TrianglePresentation& pres) { return syllableWord(pres.exps); }

TriWord syllableWord(const std::vector<ExpPair>& exps) {
  TriWord w;
  for (const auto& e : exps) {
    const auto xa = xPow(e.alpha), yb = yPow(e.beta);
    w.insert(w.end(), xa.begin(), xa.end());
    w.insert(w.end(), yb.begin(), yb.end());
  }
  return w;
}

TriWord relatorWord(const TrianglePresentation& pres) {
  const TriWord base = relatorBase(pres);
  TriWord w;
  for (int i = 0; i < pres.n; ++i) w.insert(w.end(), base.begin(), base.end());
  return w;
}

TrianglePresentation triangle(int p, int q, int r) {
  TrianglePresentation pres{Order::finite(p), Order::finite(q), {{1, 1}}, r};
  validate(pres);
  return pres;
}

TrianglePresentation presentationOf(const GtgDescription& d) {
  TrianglePresentation pres{d.p(), d.q(), {}, d.n};
  for (const auto& e : d.exps) {
    ExpPair r = e;
    if (pres.p.isFinite()) r.alpha = mod(r.alpha, pres.p.value());
    if (pres.q.isFinite()) r.beta = mod(r.beta, pres.q.value());
    pres.exps.push_back(r);
  }
  validate(pres);
  return pres;
}

std::string format(const TrianglePresentation& pres) {
  std::ostringstream out;
  out << "p=" << pres.p.str() << " q=" << pres.q.str() << " n=" << pres.n << " exps=";
  for (const auto& e : pres.exps) out << '(' << e.alpha << ',' << e.beta << ')';
  return out.str();
}

TrianglePresentation parsePresentation(const std::string& text) {
  static const std::regex field(R"((p|q|n)\s*=\s*(\w+))");
  static const std::regex pair(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
  TrianglePresentation pres;
  pres.exps.clear();
  bool seen[3] = {false, false, false};
  for (auto it = std::sregex_iterator(text.begin(), text.end(), field); it != std::sregex_iterator(); ++it) {
    const std::string key = (*it)[1], value = (*it)[2];
    if (key == "n") {
      pres.n = std::stoi(value);
      seen[2] = true;
      continue;
    }
    const Order o = (value == "inf" || value == "0") ? Order::infinite() : Order::finite(std::stoll(value));
    (key == "p" ? pres.p : pres.q) = o;
    seen[key == "p" ? 0 : 1] = true;
  }
  const auto at = text.find("exps");
  if (at == std::string::npos) throw Error(ErrorCode::Parse, "presentation needs exps=");
  const std::string tail = text.substr(at);
  for (auto it = std::sregex_iterator(tail.begin(), tail.end(), pair); it != std::sregex_iterator(); ++it)
    pres.exps.push_back({std::stoll((*it)[1]), std::stoll((*it)[2])});
  if (!seen[0] || !seen[1] || !seen[2]) throw Error(ErrorCode::Parse, "presentation needs p=, q= and n=");
  validate(pres);
  return pres;
}

Mat2C evaluate(const TriangleRep& rep, const TriWord& w) {
  const Mat2C mats[4] = {rep.X, rep.X.inverse(), rep.Y, rep.Y.inverse()};
  Mat2C out = Mat2C::Identity();
  for (int g : w) out = out * mats[g];
  return out;
}

int CosetTable::act(int coset, const TriWord& w) const {
  for (int g : w) coset = rows.at(static_cast<std::size_t>(coset))[static_cast<std::size_t>(g)];
  return coset;
}

namespace {

// Felsch enumeration state. Cosets are never reused; dead ones point at their replacement.
class Enumerator {
 public:
  Enumerator(const std::vector<TriWord>& relators, std::size_t maxCosets) : max_(maxCosets) {
    for (const auto& r : relators) {
      const TriWord ri = inverse(r);
      for (const TriWord* base : {&r, &ri})
        for (std::size_t s = 0; s < base->size(); ++s) {
          TriWord rot(base->begin() + static_cast<std::ptrdiff_t>(s), base->end());
          rot.insert(rot.end(), base->begin(), base->begin() + static_cast<std::ptrdiff_t>(s));
          byFirst_[static_cast<std::size_t>(rot.front())].push_back(std::move(rot));
        }
    }
    newCoset();
  }

  bool run() {
    for (std::size_t c = 0; c < table_.size(); ++c) {
      for (int g = 0; g < 4; ++g) {
        if (!alive(c)) break;
        if (table_[c][g] != -1) continue;
        if (live_ >= max_) return false;
        const int d = newCoset();
        define(static_cast<int>(c), g, d);
        process();
      }
    }
    return true;
  }

  std::vector<std::array<int, 4>> compact() const {
    std::vector<int> number(table_.size(), -1);
    int next = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (alive(c)) number[c] = next++;
    std::vector<std::array<int, 4>> out;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!alive(c)) continue;
      std::array<int, 4> row{};
      for (int g = 0; g < 4; ++g) row[static_cast<std::size_t>(g)] = number[static_cast<std::size_t>(table_[c][g])];
      out.push_back(row);
    }
    return out;
  }

 private:
  bool alive(std::size_t c) const { return parent_[c] == static_cast<int>(c); }

  int newCoset() {
    table_.push_back({-1, -1, -1, -1});
    parent_.push_back(static_cast<int>(parent_.size()));
    ++live_;
    return static_cast<int>(table_.size() - 1);
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      const int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void define(int c, int g, int d) {
    table_[c][g] = d;
    table_[d][invGen(g)] = c;
    deductions_.push_back({c, g});
  }

  void process() {
    while (!deductions_.empty()) {
      auto [c, g] = deductions_.back();
      deductions_.pop_back();
      if (!alive(static_cast<std::size_t>(c))) continue;
      for (const auto& r : byFirst_[g]) {
        scan(c, r);
        if (!alive(static_cast<std::size_t>(c))) break;
      }
      const int d = alive(static_cast<std::size_t>(c)) ? table_[c][g] : -1;
      if (d == -1 || !alive(static_cast<std::size_t>(d))) continue;
      for (const auto& r : byFirst_[invGen(g)]) {
        scan(d, r);
        if (!alive(static_cast<std::size_t>(d))) break;
      }
    }
  }

  void scan(int c, const TriWord& r) {
    int f = c, i = 0;
    const int len = static_cast<int>(r.size());
    while (i < len && table_[f][r[i]] != -1) f = table_[f][r[i++]];
    if (i == len) {
      if (f != c) coincidence(f, c);
      return;
    }
    int b = c, j = len - 1;
    while (j >= i && table_[b][invGen(r[j])] != -1) b = table_[b][invGen(r[j--])];
    if (j < i) {
      coincidence(f, b);
    } else if (j == i) {
      define(f, r[i], b);
    }
  }

  void merge(int a, int b, std::vector<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_;
    queue.push_back(b);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const int dead = queue[i];
      for (int g = 0; g < 4; ++g) {
        const int d = table_[dead][g];
        if (d == -1) continue;
        const int gi = invGen(g);
        if (table_[d][gi] == dead) table_[d][gi] = -1;
        const int mu = rep(dead), nu = rep(d);
        if (table_[mu][g] != -1) {
          merge(nu, table_[mu][g], queue);
        } else if (table_[nu][gi] != -1) {
          merge(mu, table_[nu][gi], queue);
        } else {
          table_[mu][g] = nu;
          table_[nu][gi] = mu;
          deductions_.push_back({mu, g});
        }
      }
    }
    // rows of live cosets may still point at dead ones
    for (auto& row : table_)
      for (auto& e : row)
        if (e != -1) e = rep(e);
  }

  std::size_t max_;
  std::size_t live_ = 0;
  std::array<std::vector<TriWord>, 4> byFirst_;
  std::vector<std::array<int, 4>> table_;
  std::vector<int> parent_;
  std::vector<std::pair<int, int>> deductions_;
};

std::vector<TriWord> relatorsOf(const TrianglePresentation& pres) {
  const int p = finiteValue(pres.p, "p"), q = finiteValue(pres.q, "q");
  return {xPow(p), yPow(q), relatorWord(pres)};
}

}  // namespace

CosetTable toddCoxeter(const TrianglePresentation& pres, std::size_t maxCosets) {
  validate(pres);
  CosetTable out;
  out.pres = pres;
  out.bound = maxCosets;
  Enumerator e(relatorsOf(pres), maxCosets);
  if (!e.run()) return out;
  out.status = TableStatus::Complete;
  out.rows = e.compact();
  return out;
}

bool checkTable(const CosetTable& table) {
  if (!table.complete()) return false;
  const int n = static_cast<int>(table.order());
  for (int c = 0; c < n; ++c)
    for (int g = 0; g < 4; ++g) {
      const int d = table.rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(g)];
      if (d < 0 || d >= n || table.rows[static_cast<std::size_t>(d)][static_cast<std::size_t>(invGen(g))] != c)
        return false;
    }
  for (const auto& r : relatorsOf(table.pres))
    for (int c = 0; c < n; ++c)
      if (table.act(c, r) != c) return false;
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    for (int d : table.rows[static_cast<std::size_t>(c)])
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = true;
        stack.push_back(d);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool isTrivialInH(const CosetTable& table, const TriWord& w) {
  if (!table.complete()) throw Error(ErrorCode::OracleUnavailable, "coset enumeration did not complete");
  for (int c = 0; c < static_cast<int>(table.order()); ++c)
    if (table.act(c, w) != c) return false;
  return true;
}

Order elementOrder(const CosetTable& table, const TriWord& w) {
  if (!table.complete()) throw Error(ErrorCode::OracleUnavailable, "coset enumeration did not complete");
  const std::size_t n = table.order();
  std::vector<bool> seen(n, false);
  long long order = 1;
  for (std::size_t c = 0; c < n; ++c) {
    if (seen[c]) continue;
    long long len = 0;
    for (int d = static_cast<int>(c); !seen[static_cast<std::size_t>(d)]; d = table.act(d, w)) {
      seen[static_cast<std::size_t>(d)] = true;
      ++len;
    }
    order = std::lcm(order, len);
  }
  return Order::finite(order);
}

std::string dump(const CosetTable& table) {
  std::ostringstream out;
  out << "coset\tx\tX\ty\tY\n";
  for (std::size_t c = 0; c < table.rows.size(); ++c) {
    out << c;
    for (int d : table.rows[c]) out << '\t' << d;
    out << '\n';
  }
  return out.str();
}

Prop1Report verifyProp1(int p, int q, const CosetTable& table) {
  Prop1Report report;
  if (p == 2 || q == 2) {
    report.skipped = true;
    return report;
  }
  const auto& pres = table.pres;
  if (!(pres.p == Order::finite(p) && pres.q == Order::finite(q) && pres.n == 2 &&
        pres.exps == std::vector<ExpPair>{{1, 1}}))
    throw Error(ErrorCode::HypothesisFail, "table is not for <x,y | x^p, y^q, (xy)^2>");
  for (long long a = 1; a < p; ++a)
    for (long long b = 1; b < q; ++b)
      for (long long c = 1; c < p; ++c)
        for (long long d = 1; d < q; ++d) {
          TriWord w = xPow(a);
          for (const auto& piece : {yPow(b), xPow(c), yPow(d)}) w.insert(w.end(), piece.begin(), piece.end());
          ++report.checked;
          if (!isTrivialInH(table, w)) continue;
          report.trivial.push_back({a, b, c, d});
          const bool ones = a == 1 && b == 1 && c == 1 && d == 1;
          const bool tops = a == p - 1 && c == p - 1 && b == q - 1 && d == q - 1;
          if (!ones && !tops) report.unexpected.push_back({a, b, c, d});
        }
  return report;
}

SpellingReport verifySpelling(const TrianglePresentation& pres, const CosetTable& table, std::size_t maxCandidates) {
  SpellingReport report;
  if (!table.complete()) throw Error(ErrorCode::OracleUnavailable, "coset enumeration did not complete");
  const int p = finiteValue(pres.p, "p"), q = finiteValue(pres.q, "q");
  const std::size_t limit = pres.k() * static_cast<std::size_t>(pres.n);
  const std::size_t cosets = table.order();
  // Walk all syllable sequences depth first, carrying the image of every coset.
  std::vector<int> start(cosets);
  std::iota(start.begin(), start.end(), 0);
  TriWord current;
  auto walk = [&](auto&& self, const std::vector<int>& images, std::size_t depth) -> void {
    if (report.truncated) return;
    if (depth > 0) {
      ++report.checked;
      bool identity = true;
      for (std::size_t c = 0; c < cosets && identity; ++c) identity = images[c] == static_cast<int>(c);
      if (identity) report.trivial.push_back(current);
      if (report.checked >= maxCandidates) {
        report.truncated = true;
        return;
      }
    }
    if (depth + 1 >= limit) return;
    for (long long g = 1; g < p; ++g)
      for (long long dl = 1; dl < q; ++dl) {
        TriWord syl = xPow(g);
        const auto ys = yPow(dl);
        syl.insert(syl.end(), ys.begin(), ys.end());
        std::vector<int> next(cosets);
        for (std::size_t c = 0; c < cosets; ++c) next[c] = table.act(images[c], syl);
        current.insert(current.end(), syl.begin(), syl.end());
        self(self, next, depth + 1);
        current.resize(current.size() - syl.size());
      }
  };
  walk(walk, start, 0);
  return report;
}

}  // namespace orp
