#include "orp/pictures.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "orp/io.hpp"

namespace orp {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

std::size_t usize(int x) { return static_cast<std::size_t>(x); }

FpWord concat(const std::vector<FpWord>& parts) {
  FpWord out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::string vertexName(const Picture& p, int v) {
  return v == kBoundary ? std::string("boundary") : p.vertices[usize(v)].name;
}

std::string dartName(const Picture& p, int e) {
  return p.arcNames[usize(arcOf(e))] + (e & 1 ? "/1" : "/0");
}

std::optional<int> factorOf(const FpWord& w) {
  if (w.empty()) return std::nullopt;
  return w.front().factor;
}

// Ordering used to pick the first end of a zone: real vertices by id, the boundary last.
long long rank(int v) { return v == kBoundary ? (1LL << 40) : v; }

}  // namespace

std::optional<int> Picture::findVertex(const std::string& name) const {
  for (std::size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Topology

Topology::Topology(const Picture& p) : p_(&p), where_(p.dartCount(), DartSlot{-2, 0}) {
  auto place = [&](int e, int v, std::size_t slot) {
    if (e < 0 || usize(e) >= where_.size())
      throw Error(ErrorCode::InvalidPicture, "dart " + std::to_string(e) + " out of range at " + vertexName(p, v));
    if (where_[usize(e)].vertex != -2)
      throw Error(ErrorCode::InvalidPicture, "dart " + dartName(p, e) + " placed twice");
    where_[usize(e)] = {v, slot};
  };
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    const auto& vx = p.vertices[v];
    if (vx.darts.empty() ? vx.corners.size() > 1 : vx.corners.size() != vx.darts.size())
      throw Error(ErrorCode::InvalidPicture, "vertex " + vx.name + " has " + std::to_string(vx.corners.size()) +
                                                 " corners for " + std::to_string(vx.darts.size()) + " arc ends");
    for (std::size_t i = 0; i < vx.darts.size(); ++i) place(vx.darts[i], static_cast<int>(v), i);
  }
  if (p.boundarySegments.size() != p.boundary.size())
    throw Error(ErrorCode::InvalidPicture, "boundary segments do not match boundary ends");
  for (std::size_t i = 0; i < p.boundary.size(); ++i) place(p.boundary[i], kBoundary, i);
  for (std::size_t e = 0; e < where_.size(); ++e)
    if (where_[e].vertex == -2) throw Error(ErrorCode::InvalidPicture, "arc end " + dartName(p, static_cast<int>(e)) + " is not attached");

  faceOf_.assign(where_.size(), 0);
  std::vector<bool> seen(where_.size(), false);
  for (std::size_t e0 = 0; e0 < where_.size(); ++e0) {
    if (seen[e0]) continue;
    std::vector<int> orbit;
    int e = static_cast<int>(e0);
    while (!seen[usize(e)]) {
      seen[usize(e)] = true;
      faceOf_[usize(e)] = faces_.size();
      orbit.push_back(e);
      e = psi(e);
    }
    faces_.push_back(std::move(orbit));  // e0 is the least dart of its orbit
  }

  const std::size_t nodes = p.vertices.size() + 1;
  UnionFind uf(nodes);
  auto node = [&](int v) { return v == kBoundary ? static_cast<int>(nodes - 1) : v; };
  for (std::size_t a = 0; a < p.arcCount(); ++a)
    uf.unite(node(where_[2 * a].vertex), node(where_[2 * a + 1].vertex));
  component_.assign(nodes, -1);
  std::map<int, int> ids;
  for (std::size_t v = 0; v < nodes; ++v) {
    if (v == nodes - 1 && p.boundary.empty()) continue;
    const int r = uf.find(static_cast<int>(v));
    auto [it, fresh] = ids.emplace(r, static_cast<int>(ids.size()));
    component_[v] = it->second;
  }
  componentCount_ = static_cast<int>(ids.size());
}

int Topology::next(int e) const {
  const auto& s = at(e);
  const auto& list = s.vertex == kBoundary ? p_->boundary : p_->vertices[usize(s.vertex)].darts;
  return list[(s.slot + 1) % list.size()];
}

int Topology::prev(int e) const {
  const auto& s = at(e);
  const auto& list = s.vertex == kBoundary ? p_->boundary : p_->vertices[usize(s.vertex)].darts;
  return list[(s.slot + list.size() - 1) % list.size()];
}

const FpWord& Topology::corner(int e) const {
  const auto& s = at(e);
  return s.vertex == kBoundary ? p_->boundarySegments[s.slot] : p_->vertices[usize(s.vertex)].corners[s.slot];
}

bool Topology::touchesBoundary(std::size_t f) const {
  return std::any_of(faces_[f].begin(), faces_[f].end(), [&](int e) { return vertexOf(e) == kBoundary; });
}

FpWord boundaryLabel(const Picture& p, const FreeProduct& fp) { return normalize(fp, concat(p.boundarySegments)); }

FpWord regionLabel(const Picture& p, const Topology& t, std::size_t f) {
  (void)p;
  FpWord out;
  for (int e : t.face(f)) {
    const auto& c = t.corner(e);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation

bool ValidationReport::has(const std::string& code) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
}

namespace {

FpWord cyclicCore(const FreeProduct& fp, const FpWord& w) { return cyclicReduce(fp, normalize(fp, w)).core; }

void checkVertexLabels(const Picture& p, const GtgDescription& d, const CosetTable* h, ValidationReport& rep) {
  const FpWord pos = label(d), neg = inverse(d.fp, pos);
  for (const auto& v : p.vertices) {
    const FpWord word = concat(v.corners);
    if (v.sign == 0) {
      const FpWord core = cyclicCore(d.fp, word);
      if (core.empty()) continue;
      const auto form = parseForm(d, core);
      if (!form) {
        rep.violations.push_back({violation::kCliqueLabel, v.name, "label " + d.fp.format(core) + " is not a word in a, UbU^-1"});
        continue;
      }
      if (h && h->complete() && !isTrivialInH(*h, syllableWord(form->exps)))
        rep.violations.push_back({violation::kCliqueLabel, v.name, "label " + d.fp.format(core) + " is nontrivial in H"});
      continue;
    }
    const bool letters = !v.darts.empty() &&
                         std::all_of(v.corners.begin(), v.corners.end(), [](const FpWord& c) { return c.size() == 1; });
    const FpWord& want = v.sign > 0 ? pos : neg;
    if (!letters || !cyclicallyEqual(word, want))
      rep.violations.push_back({violation::kLabel, v.name,
                                "corners read " + d.fp.format(word) + ", expected a rotation of " + d.fp.format(want)});
  }
}

}  // namespace

ValidationReport validate(const Picture& p, const GtgDescription& d, const CosetTable* h) {
  ValidationReport rep;
  std::optional<Topology> topo;
  try {
    topo.emplace(p);
  } catch (const Error& e) {
    rep.violations.push_back({violation::kStructure, "picture", e.what()});
    return rep;
  }
  const Topology& t = *topo;
  rep.boundaryLabel = boundaryLabel(p, d.fp);
  if (p.surface == Surface::Sphere && (!p.boundary.empty() || !rep.boundaryLabel.empty()))
    rep.violations.push_back({violation::kSphere, "boundary", "a spherical picture has no boundary"});

  checkVertexLabels(p, d, h, rep);

  std::vector<std::optional<int>> faceFactor(t.faceCount());
  for (std::size_t f = 0; f < t.faceCount(); ++f) {
    const FpWord lab = regionLabel(p, t, f);
    const std::string where = "region at " + dartName(p, t.face(f).front());
    std::set<int> factors;
    for (const auto& x : lab) factors.insert(x.factor);
    if (factors.size() > 1) {
      rep.violations.push_back({violation::kRegionFactor, where, "letters from both factors: " + d.fp.format(lab)});
      continue;
    }
    faceFactor[f] = factorOf(lab);
    if (!normalize(d.fp, lab).empty())
      rep.violations.push_back({violation::kCorner, where, "region label " + d.fp.format(lab) + " is nontrivial"});
  }
  for (std::size_t a = 0; a < p.arcCount(); ++a) {
    const int e = static_cast<int>(2 * a);
    const auto f1 = faceFactor[t.faceOf(e)], f2 = faceFactor[t.faceOf(t.prev(e))];
    if (f1 && f2 && *f1 == *f2)
      rep.violations.push_back({violation::kArcFactor, "arc " + p.arcNames[a], "both sides lie in factor " + std::to_string(*f1)});
  }

  // Euler characteristic per component, the boundary acting as a vertex.
  const int comps = t.componentCount();
  std::vector<long long> chi(usize(comps), 0);
  const std::size_t nodes = p.vertices.size() + 1;
  for (std::size_t v = 0; v < nodes; ++v)
    if (t.component()[v] >= 0) ++chi[usize(t.component()[v])];
  auto compOf = [&](int e) {
    const int v = t.vertexOf(e);
    return t.component()[v == kBoundary ? nodes - 1 : usize(v)];
  };
  for (std::size_t a = 0; a < p.arcCount(); ++a) --chi[usize(compOf(static_cast<int>(2 * a)))];
  for (std::size_t f = 0; f < t.faceCount(); ++f) ++chi[usize(compOf(t.face(f).front()))];
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    if (p.vertices[v].darts.empty()) ++chi[usize(t.component()[v])];  // its one region
  for (int c = 0; c < comps; ++c)
    if (chi[usize(c)] != 2)
      rep.violations.push_back({violation::kEuler, "component " + std::to_string(c),
                                "V - E + F = " + std::to_string(chi[usize(c)])});

  for (const auto& z : zones(p, d))
    if (!z.piecesMatch)
      rep.violations.push_back({violation::kPiece, "zone of arc " + p.arcNames[usize(z.arcs.front())],
                                "pieces " + d.fp.format(z.s) + " and " + d.fp.format(z.t) + " do not match"});

  if (p.declaredLabel) {
    const FpWord want = cyclicCore(d.fp, *p.declaredLabel), got = cyclicCore(d.fp, rep.boundaryLabel);
    if (!cyclicallyEqual(want, got))
      rep.violations.push_back({violation::kBoundaryLabel, "boundary",
                                "reads " + d.fp.format(got) + ", declared " + d.fp.format(want)});
  }
  return rep;
}

std::vector<std::optional<std::size_t>> vertexOffsets(const Picture& p, const GtgDescription& d) {
  std::vector<std::optional<std::size_t>> out;
  for (const auto& v : p.vertices) {
    const bool letters = !v.darts.empty() &&
                         std::all_of(v.corners.begin(), v.corners.end(), [](const FpWord& c) { return c.size() == 1; });
    if (!letters) {
      out.push_back(std::nullopt);
      continue;
    }
    const auto form = parseForm(d, concat(v.corners));
    const std::size_t n = v.corners.size();
    out.push_back(form ? std::optional<std::size_t>((n - form->offset) % n) : std::nullopt);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Bridge moves and dipoles

namespace {

std::set<std::size_t> facesBeside(const Topology& t, int e) {
  std::set<std::size_t> out;
  for (int x : {e, mate(e)}) {
    out.insert(t.faceOf(x));
    out.insert(t.faceOf(t.prev(x)));
  }
  return out;
}

int& slotRef(Picture& p, const DartSlot& s) {
  return s.vertex == kBoundary ? p.boundary[s.slot] : p.vertices[usize(s.vertex)].darts[s.slot];
}

}  // namespace

Picture bridgeMove(const Picture& p, const GtgDescription& d, int x, int y, const CosetTable* h) {
  const Topology t(p);
  if (x < 0 || y < 0 || usize(x) >= p.dartCount() || usize(y) >= p.dartCount())
    throw Error(ErrorCode::IllegalMove, "no such arc end");
  if (arcOf(x) == arcOf(y)) throw Error(ErrorCode::IllegalMove, "both ends belong to one arc");
  const auto fx = facesBeside(t, x), fy = facesBeside(t, y);
  if (std::none_of(fx.begin(), fx.end(), [&](std::size_t f) { return fy.contains(f); }))
    throw Error(ErrorCode::IllegalMove, "arcs " + p.arcNames[usize(arcOf(x))] + " and " + p.arcNames[usize(arcOf(y))] +
                                            " do not border a common region");
  Picture out = p;
  slotRef(out, t.at(x)) = y;
  slotRef(out, t.at(y)) = x;
  const auto rep = validate(out, d, h);
  if (!rep.ok())
    throw Error(ErrorCode::IllegalMove, "result is not a valid picture: " + rep.violations.front().code + " " +
                                            rep.violations.front().detail);
  return out;
}

std::vector<std::pair<int, int>> bridgeCandidates(const Picture& p) {
  const Topology t(p);
  std::set<std::pair<int, int>> out;
  for (std::size_t f = 0; f < t.faceCount(); ++f) {
    std::set<int> near;
    for (int e : t.face(f)) {
      near.insert(e);
      near.insert(t.next(e));
    }
    std::set<int> far = near;
    for (int e : near) far.insert(mate(e));
    for (int x : near)
      for (int y : far)
        if (arcOf(x) != arcOf(y)) out.insert({std::min(x, y), std::max(x, y)});
  }
  return {out.begin(), out.end()};
}

std::vector<std::pair<int, int>> legalBridges(const Picture& p, const GtgDescription& d, const CosetTable* h) {
  std::vector<std::pair<int, int>> out;
  for (auto [x, y] : bridgeCandidates(p)) {
    try {
      bridgeMove(p, d, x, y, h);
      out.push_back({x, y});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::IllegalMove) throw;
    }
  }
  return out;
}

std::optional<Dipole> dipoleAt(const Picture& p, const FreeProduct& fp) {
  const Topology t(p);
  auto readFrom = [&](int e) {
    const auto& s = t.at(e);
    const auto& v = p.vertices[usize(s.vertex)];
    FpWord w;
    for (std::size_t i = 0; i < v.corners.size(); ++i) {
      const auto& c = v.corners[(s.slot + i) % v.corners.size()];
      w.insert(w.end(), c.begin(), c.end());
    }
    return w;
  };
  for (std::size_t a = 0; a < p.arcCount(); ++a) {
    const int e = static_cast<int>(2 * a);
    const int u = t.vertexOf(e), v = t.vertexOf(mate(e));
    if (u == kBoundary || v == kBoundary || u == v) continue;
    if (p.vertices[usize(u)].degree() != p.vertices[usize(v)].degree()) continue;
    if (readFrom(e) == inverse(fp, readFrom(mate(e)))) return Dipole{std::min(u, v), std::max(u, v), static_cast<int>(a)};
  }
  return std::nullopt;
}

namespace {

std::string stateKey(const Picture& p) {
  std::string key;
  for (const auto& v : p.vertices) {
    for (int e : v.darts) key += std::to_string(e) + ',';
    key += ';';
  }
  for (int e : p.boundary) key += std::to_string(e) + ',';
  return key;
}

}  // namespace

DipoleSearch findDipole(const Picture& p, const GtgDescription& d, int depth, std::size_t maxStates) {
  DipoleSearch out;
  struct Node {
    Picture pic;
    std::vector<std::pair<int, int>> moves;
  };
  std::deque<Node> queue{{p, {}}};
  std::unordered_set<std::string> seen{stateKey(p)};
  while (!queue.empty()) {
    Node cur = std::move(queue.front());
    queue.pop_front();
    ++out.statesExplored;
    out.depth = std::max(out.depth, static_cast<int>(cur.moves.size()));
    if (auto dip = dipoleAt(cur.pic, d.fp)) {
      out.dipole = dip;
      out.moves = cur.moves;
      return out;
    }
    if (static_cast<int>(cur.moves.size()) >= depth) continue;
    for (auto [x, y] : bridgeCandidates(cur.pic)) {
      Picture next;
      try {
        next = bridgeMove(cur.pic, d, x, y);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::IllegalMove) throw;
        continue;
      }
      if (!seen.insert(stateKey(next)).second) continue;
      if (seen.size() > maxStates) {
        out.capped = true;
        return out;
      }
      auto moves = cur.moves;
      moves.push_back({x, y});
      queue.push_back({std::move(next), std::move(moves)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Zones

std::vector<Zone> zones(const Picture& p, const GtgDescription& d) {
  const Topology t(p);
  const std::size_t darts = p.dartCount();
  // linked[e]: the corner after e lies in a two-cornered region bounded by two distinct arcs
  std::vector<bool> linked(darts, false);
  for (std::size_t f = 0; f < t.faceCount(); ++f) {
    const auto& face = t.face(f);
    if (face.size() != 2) continue;
    if (arcOf(face[0]) == arcOf(t.next(face[0]))) continue;
    const bool open = std::all_of(face.begin(), face.end(),
                                  [&](int e) { return t.vertexOf(e) != kBoundary || t.corner(e).empty(); });
    if (!open) continue;
    for (int e : face) linked[usize(e)] = true;
  }
  UnionFind uf(p.arcCount());
  for (std::size_t e = 0; e < darts; ++e)
    if (linked[e]) uf.unite(arcOf(static_cast<int>(e)), arcOf(t.next(static_cast<int>(e))));

  const auto offsets = vertexOffsets(p, d);
  auto position = [&](int e) -> std::optional<std::size_t> {
    const auto& s = t.at(e);
    if (s.vertex == kBoundary || !offsets[usize(s.vertex)]) return std::nullopt;
    const std::size_t n = p.vertices[usize(s.vertex)].corners.size();
    return (s.slot + *offsets[usize(s.vertex)]) % n;
  };
  auto matches = [&](const FpWord& x, const FpWord& y) {
    if (x.size() == 1 && y.size() == 1) return simEqual(d, x[0], d.fp.inverse(y[0]));
    return normalize(d.fp, concat({x, y})).empty();
  };

  std::vector<Zone> out;
  std::vector<bool> done(p.arcCount(), false);
  for (std::size_t a0 = 0; a0 < p.arcCount(); ++a0) {
    if (done[a0]) continue;
    const int root = uf.find(static_cast<int>(a0));
    std::size_t size = 0;
    for (std::size_t a = a0; a < p.arcCount(); ++a) size += uf.find(static_cast<int>(a)) == root;

    Zone z;
    int start = static_cast<int>(2 * a0);
    if (size > 1 && !linked[usize(start)] && !linked[usize(t.prev(start))]) start = mate(start);
    // walk back to the first arc of the chain
    if (size > 1) {
      int e = start;
      for (std::size_t i = 0; i < size && linked[usize(t.prev(e))]; ++i) e = t.prev(e);
      if (linked[usize(t.prev(e))]) z.closed = true;
      else start = e;
    }
    std::vector<int> side0{start};
    while (side0.size() < size && linked[usize(side0.back())]) side0.push_back(t.next(side0.back()));
    std::vector<int> side1;
    for (auto it = side0.rbegin(); it != side0.rend(); ++it) side1.push_back(mate(*it));
    if (rank(t.vertexOf(side1.front())) < rank(t.vertexOf(side0.front()))) std::swap(side0, side1);

    for (int e : side0) {
      z.arcs.push_back(arcOf(e));
      done[usize(arcOf(e))] = true;
    }
    z.ends = {t.vertexOf(side0.front()), t.vertexOf(side1.front())};
    const std::size_t w = side0.size(), pieces = z.closed ? w : w - 1;
    for (std::size_t i = 0; i < pieces; ++i) {
      const auto& c0 = t.corner(side0[i]);
      const auto& c1 = t.corner(side1[i]);
      z.s.insert(z.s.end(), c0.begin(), c0.end());
      z.t.insert(z.t.end(), c1.begin(), c1.end());
      const auto& partner = t.corner(side1[(2 * w - 2 - i) % w]);
      if (!matches(c0, partner)) z.piecesMatch = false;
    }
    if (auto ps = position(t.prev(side0.front()))) z.sAnchor = ps;
    if (auto pt = position(t.prev(side1.front()))) z.tAnchor = pt;
    z.darts = {side0, side1};
    out.push_back(std::move(z));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cliques

std::vector<int> cliqueRelation(const Picture& p, const GtgDescription& d) {
  if (detectRefinement(d).refinement)
    throw Error(ErrorCode::NotMaximal, "the description admits a refinement; refine it first");
  const Topology t(p);
  const auto offsets = vertexOffsets(p, d);
  const std::size_t l = d.l();
  UnionFind uf(p.vertices.size());
  for (std::size_t a = 0; a < p.arcCount(); ++a) {
    const int e = static_cast<int>(2 * a);
    const int u = t.vertexOf(e), v = t.vertexOf(mate(e));
    if (u == kBoundary || v == kBoundary || u == v || !offsets[usize(u)] || !offsets[usize(v)]) continue;
    const std::size_t pu = (t.at(e).slot + *offsets[usize(u)]) % p.vertices[usize(u)].corners.size();
    const std::size_t pv = (t.at(mate(e)).slot + *offsets[usize(v)]) % p.vertices[usize(v)].corners.size();
    if ((pu + pv) % l == 1 % l) uf.unite(u, v);
  }
  std::vector<int> out(p.vertices.size());
  std::map<int, int> ids;
  for (std::size_t v = 0; v < p.vertices.size(); ++v)
    out[v] = ids.emplace(uf.find(static_cast<int>(v)), static_cast<int>(ids.size())).first->second;
  return out;
}

CliquePicture contract(const Picture& p, const GtgDescription& d, const std::vector<int>& classes) {
  const Topology t(p);
  if (classes.size() != p.vertices.size()) throw Error(ErrorCode::InvalidPicture, "one class per vertex expected");
  const int k = classes.empty() ? 0 : *std::max_element(classes.begin(), classes.end()) + 1;
  auto cls = [&](int e) { return t.vertexOf(e) == kBoundary ? -1 : classes[usize(t.vertexOf(e))]; };
  auto internal = [&](std::size_t a) {
    const int c0 = cls(static_cast<int>(2 * a)), c1 = cls(static_cast<int>(2 * a + 1));
    return c0 >= 0 && c0 == c1;
  };

  CliquePicture cp;
  cp.desc = std::make_shared<const GtgDescription>(d);
  cp.sourceArcs = p.arcCount();
  cp.members.assign(usize(k), {});
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    cp.members[usize(classes[v])].push_back(static_cast<int>(v));
    cp.memberVertices.push_back(p.vertices[v]);
    cp.memberIds.push_back(static_cast<int>(v));
  }

  std::vector<int> newArc(p.arcCount(), -1);
  for (std::size_t a = 0; a < p.arcCount(); ++a) {
    if (internal(a)) {
      cp.internalArcs.push_back(static_cast<int>(a));
      cp.internalNames.push_back(p.arcNames[a]);
    } else {
      newArc[a] = static_cast<int>(cp.arcOrigin.size());
      cp.arcOrigin.push_back(static_cast<int>(a));
      cp.map.arcNames.push_back(p.arcNames[a]);
    }
  }
  auto mapDart = [&](int e) { return 2 * newArc[usize(arcOf(e))] + (e & 1); };

  cp.map.surface = p.surface;
  for (int c = 0; c < k; ++c) {
    const auto& mem = cp.members[usize(c)];
    // connectivity and Euler characteristic of the class
    UnionFind uf(p.vertices.size());
    long long edges = 0, faces = 0;
    for (int a : cp.internalArcs)
      if (cls(2 * a) == c) {
        ++edges;
        uf.unite(t.vertexOf(2 * a), t.vertexOf(2 * a + 1));
      }
    for (std::size_t f = 0; f < t.faceCount(); ++f) {
      const auto& face = t.face(f);
      if (std::all_of(face.begin(), face.end(), [&](int e) { return cls(e) == c; })) ++faces;
    }
    for (int v : mem)
      if (p.vertices[usize(v)].darts.empty()) ++faces;
    for (int v : mem)
      if (uf.find(v) != uf.find(mem.front()))
        throw Error(ErrorCode::NotSimplyConnected, "class of " + p.vertices[usize(mem.front())].name + " is not connected");
    const long long chi = static_cast<long long>(mem.size()) - edges + faces;

    std::vector<int> external;
    for (int v : mem)
      for (int e : p.vertices[usize(v)].darts)
        if (!internal(usize(arcOf(e)))) external.push_back(e);

    PicVertex cv;
    cv.sign = 0;
    for (int v : mem) cv.name += (cv.name.empty() ? "" : "+") + p.vertices[usize(v)].name;
    if (external.empty()) {
      if (chi != 2)
        throw Error(ErrorCode::NotSimplyConnected, "closed class " + cv.name + " has Euler characteristic " + std::to_string(chi));
    } else {
      if (chi != 1)
        throw Error(ErrorCode::NotSimplyConnected, "class " + cv.name + " has Euler characteristic " + std::to_string(chi));
      const int first = *std::min_element(external.begin(), external.end());
      int x = first;
      do {
        cv.darts.push_back(mapDart(x));
        FpWord word = t.corner(x);
        int y = t.next(x);
        while (internal(usize(arcOf(y)))) {
          y = mate(y);
          const auto& c = t.corner(y);
          word.insert(word.end(), c.begin(), c.end());
          y = t.next(y);
        }
        cv.corners.push_back(normalize(d.fp, word));
        x = y;
      } while (x != first && cv.darts.size() <= external.size());
      if (cv.darts.size() != external.size())
        throw Error(ErrorCode::NotSimplyConnected, "class " + cv.name + " has more than one boundary cycle");
    }
    const FpWord lab = cyclicReduce(d.fp, normalize(d.fp, concat(cv.corners))).core;
    cp.labels.push_back(lab);
    cp.formOk.push_back(lab.empty() || parseForm(d, lab).has_value());
    cp.map.vertices.push_back(std::move(cv));
  }
  for (std::size_t i = 0; i < p.boundary.size(); ++i) {
    cp.map.boundary.push_back(mapDart(p.boundary[i]));
    cp.map.boundarySegments.push_back(p.boundarySegments[i]);
  }
  cp.map.declaredLabel = p.declaredLabel;

  for (const auto& z : zones(p, d)) {
    const bool inside = std::all_of(z.arcs.begin(), z.arcs.end(), [&](int a) { return internal(usize(a)); });
    if (inside && z.omega() % d.half() != 0) cp.unevenClasses.push_back(z.omega());
  }
  return cp;
}

CliquePicture cliqueQuotient(const Picture& p, const GtgDescription& d) { return contract(p, d, cliqueRelation(p, d)); }

Picture expansion(const CliquePicture& cp) {
  Picture out;
  out.surface = cp.map.surface;
  out.arcNames.assign(cp.sourceArcs, "");
  for (std::size_t i = 0; i < cp.internalArcs.size(); ++i) out.arcNames[usize(cp.internalArcs[i])] = cp.internalNames[i];
  for (std::size_t a = 0; a < cp.arcOrigin.size(); ++a) out.arcNames[usize(cp.arcOrigin[a])] = cp.map.arcNames[a];
  std::vector<std::pair<int, PicVertex>> ordered;
  for (std::size_t i = 0; i < cp.memberVertices.size(); ++i) ordered.push_back({cp.memberIds[i], cp.memberVertices[i]});
  std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (auto& [id, v] : ordered) out.vertices.push_back(std::move(v));
  for (std::size_t i = 0; i < cp.map.boundary.size(); ++i) {
    const int e = cp.map.boundary[i];
    out.boundary.push_back(2 * cp.arcOrigin[usize(arcOf(e))] + (e & 1));
    out.boundarySegments.push_back(cp.map.boundarySegments[i]);
  }
  out.declaredLabel = cp.map.declaredLabel;
  return out;
}

// ---------------------------------------------------------------------------
// Audits

std::vector<std::size_t> zoneDegrees(const Picture& p, const std::vector<Zone>& zs) {
  std::vector<std::size_t> deg(p.vertices.size(), 0);
  for (const auto& z : zs)
    for (int v : z.ends)
      if (v != kBoundary) ++deg[usize(v)];
  return deg;
}

std::vector<bool> interiorVertices(const Picture& p) {
  const Topology t(p);
  std::vector<bool> interior(p.vertices.size(), true);
  for (std::size_t f = 0; f < t.faceCount(); ++f) {
    if (!t.touchesBoundary(f)) continue;
    for (int e : t.face(f))
      if (t.vertexOf(e) != kBoundary) interior[usize(t.vertexOf(e))] = false;
  }
  return interior;
}

C6Report c6Audit(const CliquePicture& cp) {
  C6Report rep;
  const auto zs = zones(cp.map, *cp.desc);
  const auto deg = zoneDegrees(cp.map, zs);
  const auto interior = interiorVertices(cp.map);
  for (std::size_t v = 0; v < cp.map.vertices.size(); ++v)
    if (interior[v] && deg[v] < 6) rep.lowDegree.push_back({static_cast<int>(v), deg[v]});
  return rep;
}

ZoneBoundReport zoneBoundAudit(const CliquePicture& cp, const GtgDescription& d, Hypothesis hyp) {
  const auto checks = hypothesisClauses(d);
  const bool holds = hyp == Hypothesis::A ? checks.aHolds() : checks.bHolds();
  if (!holds) {
    std::string why;
    for (const auto& c : hyp == Hypothesis::A ? checks.a : checks.b)
      if (c.holds != Decision::Yes) why += (why.empty() ? "" : "; ") + c.name + " (" + c.detail + ")";
    throw Error(ErrorCode::HypothesisFail, "hypothesis " + std::string(hypothesisName(hyp)) + " fails: " + why);
  }
  ZoneBoundReport rep;
  rep.hypothesis = hyp;
  rep.threshold = hyp == Hypothesis::A ? d.l() : d.half();
  rep.zones = zones(cp.map, d);
  for (std::size_t i = 0; i < rep.zones.size(); ++i) {
    const auto& z = rep.zones[i];
    if (z.ends[0] != kBoundary && z.ends[1] != kBoundary && z.omega() >= rep.threshold) rep.flagged.push_back(i);
  }
  return rep;
}

CurvatureReport curvatureAudit(const CliquePicture& cp) {
  if (cp.map.surface != Surface::Disc) throw Error(ErrorCode::InvalidPicture, "curvature audit needs a disc");
  CurvatureReport rep;
  const auto zs = zones(cp.map, *cp.desc);
  for (const auto& z : zs)
    for (int v : z.ends) rep.lhs += v == kBoundary;
  for (auto deg : zoneDegrees(cp.map, zs)) rep.rhs += static_cast<long long>(deg) - 6;
  return rep;
}

std::vector<Od2Hit> od2Probe(const CliquePicture& cp, const GtgDescription& d) {
  std::vector<Od2Hit> out;
  const auto zs = zones(cp.map, d);
  const std::size_t l = d.l();
  for (std::size_t i = 0; i < zs.size(); ++i) {
    const auto& z = zs[i];
    if (z.ends[0] == kBoundary || z.ends[1] == kBoundary || !z.sAnchor || !z.tAnchor) continue;
    for (std::size_t j = 1; j < z.omega(); ++j)
      for (std::size_t m = 1; m < z.omega(); ++m)
        if ((*z.sAnchor + j) % l == (*z.tAnchor + m) % l) out.push_back({i, j, m});
  }
  return out;
}

std::string graphDump(const Picture& p, const std::vector<Zone>& zs) {
  const Topology t(p);
  std::vector<std::pair<std::size_t, std::size_t>> zoneOf(p.arcCount());
  for (std::size_t i = 0; i < zs.size(); ++i)
    for (int a : zs[i].arcs) zoneOf[usize(a)] = {i, zs[i].omega()};
  std::ostringstream out;
  for (std::size_t a = 0; a < p.arcCount(); ++a)
    out << "arc " << p.arcNames[a] << ' ' << vertexName(p, t.vertexOf(static_cast<int>(2 * a))) << ' '
        << vertexName(p, t.vertexOf(static_cast<int>(2 * a + 1))) << " zone " << zoneOf[a].first << " omega "
        << zoneOf[a].second << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string wordText(const FreeProduct& fp, const FpWord& w) { return w.empty() ? "1" : fp.format(w); }

struct RawVertex {
  std::string name;
  int sign = 1;
  std::vector<std::string> rotation;
  std::map<std::string, FpWord> corners;
  std::optional<std::vector<FpWord>> cornerList;
  std::size_t line = 0;
};

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

// Tokens "e" and "e#2" name the first and second occurrence of an arc in one rotation.
std::vector<std::string> occurrenceTokens(const std::vector<std::string>& rotation) {
  std::map<std::string, int> count;
  std::vector<std::string> out;
  for (const auto& tok : rotation) {
    const auto hash = tok.find('#');
    const std::string base = tok.substr(0, hash);
    const int k = ++count[base];
    out.push_back(k == 1 ? base : base + "#" + std::to_string(k));
  }
  return out;
}

std::string baseName(const std::string& tok) { return tok.substr(0, tok.find('#')); }

}  // namespace

Picture parsePicture(const std::string& text, const FreeProduct& fp) {
  Picture p;
  std::vector<RawVertex> raw;
  std::map<std::string, std::size_t> vIndex;
  struct RawArc {
    std::string name, end0, end1;
  };
  std::vector<RawArc> arcs;
  std::map<std::string, std::size_t> aIndex;
  std::vector<std::string> boundary;
  std::map<std::string, FpWord> segments;
  bool haveBoundary = false;

  std::istringstream in(text);
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto tok = splitWords(stripLine(line));
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    auto rest = [&](std::size_t from) {
      std::string s;
      for (std::size_t i = from; i < tok.size(); ++i) s += (s.empty() ? "" : " ") + tok[i];
      return s;
    };
    auto word = [&](std::size_t from) {
      try {
        return parseFpWord(fp, rest(from));
      } catch (const Error& e) {
        fail(no, e.what());
      }
    };
    if (key == "surface") {
      if (tok.size() != 2 || (tok[1] != "disc" && tok[1] != "sphere")) fail(no, "expected: surface disc|sphere");
      p.surface = tok[1] == "disc" ? Surface::Disc : Surface::Sphere;
    } else if (key == "vertex" || key == "clique") {
      RawVertex v;
      v.line = no;
      std::size_t i = 2;
      if (tok.size() < 3) fail(no, "vertex needs a name and a rotation");
      v.name = tok[1];
      if (key == "vertex") {
        if (tok.size() < 5 || tok[2] != "sign" || (tok[3] != "+" && tok[3] != "-") || tok[4] != "rotation")
          fail(no, "expected: vertex <name> sign +|- rotation <arcs>");
        v.sign = tok[3] == "+" ? 1 : -1;
        i = 5;
      } else {
        if (tok[2] != "rotation") fail(no, "expected: clique <name> rotation <arcs>");
        v.sign = 0;
        i = 3;
      }
      v.rotation.assign(tok.begin() + static_cast<std::ptrdiff_t>(i), tok.end());
      if (v.name == "boundary" || vIndex.contains(v.name)) fail(no, "bad or duplicate vertex name " + v.name);
      vIndex[v.name] = raw.size();
      raw.push_back(std::move(v));
    } else if (key == "arc") {
      if (tok.size() != 4) fail(no, "expected: arc <name> <end> <end>");
      if (aIndex.contains(tok[1]) || tok[1].find('#') != std::string::npos) fail(no, "bad or duplicate arc name " + tok[1]);
      aIndex[tok[1]] = arcs.size();
      arcs.push_back({tok[1], tok[2], tok[3]});
    } else if (key == "corner") {
      if (tok.size() < 5 || tok[2] != "after") fail(no, "expected: corner <vertex> after <arc> <letters>");
      if (!vIndex.contains(tok[1])) fail(no, "corner of an undeclared vertex " + tok[1]);
      auto& v = raw[vIndex[tok[1]]];
      if (!v.corners.emplace(tok[3], word(4)).second) fail(no, "corner given twice");
    } else if (key == "corners") {
      if (tok.size() < 2 || !vIndex.contains(tok[1])) fail(no, "corners of an undeclared vertex");
      auto& v = raw[vIndex[tok[1]]];
      std::vector<FpWord> list;
      if (v.rotation.empty()) {
        list.push_back(word(2));
      } else {
        for (std::size_t i = 2; i < tok.size(); ++i) {
          try {
            list.push_back(tok[i] == "1" ? FpWord{} : FpWord{parseFpLetter(fp, tok[i])});
          } catch (const Error& e) {
            fail(no, e.what());
          }
        }
      }
      v.cornerList = std::move(list);
    } else if (key == "boundary") {
      haveBoundary = true;
      boundary.assign(tok.begin() + 1, tok.end());
    } else if (key == "boundary_label") {
      if (tok.size() >= 3 && tok[1] == "after") {
        segments[tok[2]] = word(3);
      } else {
        p.declaredLabel = word(1);
      }
    }
    // anything else belongs to the description sharing the file
  }
  (void)haveBoundary;

  p.arcNames.resize(arcs.size());
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    p.arcNames[a] = arcs[a].name;
    for (const auto& end : {arcs[a].end0, arcs[a].end1})
      if (end != "boundary" && !vIndex.contains(end)) fail(0, "arc " + arcs[a].name + " ends at undeclared vertex " + end);
  }
  // the dart of `tok` at vertex `owner`
  auto dartFor = [&](const std::string& owner, const std::string& tok, std::size_t line) {
    const std::string base = baseName(tok);
    if (!aIndex.contains(base)) fail(line, "unknown arc " + base);
    const std::size_t a = aIndex[base];
    const bool second = tok.find('#') != std::string::npos;
    const auto& arc = arcs[a];
    if (arc.end0 == owner && arc.end1 == owner) return static_cast<int>(2 * a + (second ? 1 : 0));
    if (second) fail(line, "arc " + base + " meets " + owner + " once");
    if (arc.end0 == owner) return static_cast<int>(2 * a);
    if (arc.end1 == owner) return static_cast<int>(2 * a + 1);
    fail(line, "arc " + base + " does not end at " + owner);
  };
  for (auto& v : raw) {
    PicVertex out;
    out.name = v.name;
    out.sign = v.sign;
    const auto toks = occurrenceTokens(v.rotation);
    for (const auto& tk : toks) out.darts.push_back(dartFor(v.name, tk, v.line));
    if (v.cornerList) {
      if (!v.corners.empty()) fail(v.line, "vertex " + v.name + " mixes corner and corners lines");
      const std::size_t want = std::max<std::size_t>(toks.size(), 1);
      if (v.cornerList->size() != want) fail(v.line, "vertex " + v.name + " needs " + std::to_string(want) + " corners");
      out.corners = *v.cornerList;
    } else {
      for (const auto& tk : toks) {
        auto it = v.corners.find(tk);
        if (it == v.corners.end()) fail(v.line, "vertex " + v.name + " has no corner after " + tk);
        out.corners.push_back(it->second);
      }
      if (v.corners.size() != toks.size()) fail(v.line, "vertex " + v.name + " has corners after arcs it does not meet");
    }
    p.vertices.push_back(std::move(out));
  }
  const auto btoks = occurrenceTokens(boundary);
  for (const auto& tk : btoks) {
    p.boundary.push_back(dartFor("boundary", tk, 0));
    auto it = segments.find(tk);
    p.boundarySegments.push_back(it == segments.end() ? FpWord{} : it->second);
  }
  for (const auto& [tk, w] : segments)
    if (std::find(btoks.begin(), btoks.end(), tk) == btoks.end()) fail(0, "boundary_label after " + tk + " names no boundary end");
  return p;
}

std::string formatPicture(const Picture& p, const FreeProduct& fp) {
  const Topology t(p);
  std::ostringstream out;
  out << "surface " << (p.surface == Surface::Disc ? "disc" : "sphere") << '\n';
  auto tokensOf = [&](const std::vector<int>& darts) {
    std::vector<std::string> names;
    for (int e : darts) names.push_back(p.arcNames[usize(arcOf(e))]);
    return occurrenceTokens(names);
  };
  for (const auto& v : p.vertices) {
    const auto toks = tokensOf(v.darts);
    if (v.sign == 0)
      out << "clique " << v.name << " rotation";
    else
      out << "vertex " << v.name << " sign " << (v.sign > 0 ? '+' : '-') << " rotation";
    for (const auto& tk : toks) out << ' ' << tk;
    out << '\n';
  }
  for (std::size_t a = 0; a < p.arcCount(); ++a)
    out << "arc " << p.arcNames[a] << ' ' << vertexName(p, t.vertexOf(static_cast<int>(2 * a))) << ' '
        << vertexName(p, t.vertexOf(static_cast<int>(2 * a + 1))) << '\n';
  for (const auto& v : p.vertices) {
    const auto toks = tokensOf(v.darts);
    if (toks.empty()) {
      out << "corners " << v.name << ' ' << wordText(fp, v.corners.empty() ? FpWord{} : v.corners[0]) << '\n';
      continue;
    }
    for (std::size_t i = 0; i < toks.size(); ++i)
      out << "corner " << v.name << " after " << toks[i] << ' ' << wordText(fp, v.corners[i]) << '\n';
  }
  if (!p.boundary.empty()) {
    const auto toks = tokensOf(p.boundary);
    out << "boundary";
    for (const auto& tk : toks) out << ' ' << tk;
    out << '\n';
    for (std::size_t i = 0; i < toks.size(); ++i)
      if (!p.boundarySegments[i].empty())
        out << "boundary_label after " << toks[i] << ' ' << fp.format(p.boundarySegments[i]) << '\n';
  }
  if (p.declaredLabel) out << "boundary_label " << wordText(fp, *p.declaredLabel) << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------
// Builders

namespace {

// One vertex with every arc on the boundary, corner i = L[i]. The boundary reads
// the inverse of L[N-1] L[0] ... L[N-2].
Picture boundaryVertex(const std::string& name, int sign, const FpWord& L, const FreeProduct& fp) {
  Picture p;
  const std::size_t n = L.size();
  PicVertex v{name, sign, {}, {}};
  for (std::size_t i = 0; i < n; ++i) {
    p.arcNames.push_back("e" + std::to_string(i + 1));
    v.darts.push_back(static_cast<int>(2 * i));
    v.corners.push_back({L[i]});
  }
  for (std::size_t j = 0; j < n; ++j) {
    p.boundary.push_back(static_cast<int>(2 * (n - 1 - j) + 1));
    p.boundarySegments.push_back({fp.inverse(L[(2 * n - 2 - j) % n])});
  }
  p.vertices.push_back(std::move(v));
  return p;
}

}  // namespace

Picture singleVertexPicture(const GtgDescription& d, int sign) {
  const FpWord L = sign > 0 ? label(d) : inverse(d.fp, label(d));
  return boundaryVertex("v1", sign > 0 ? 1 : -1, L, d.fp);
}

Picture singleCliquePicture(const FpWord& lab, const FreeProduct& fp) {
  if (lab.empty()) {
    Picture p;
    p.vertices.push_back({"K1", 0, {}, {FpWord{}}});
    return p;
  }
  return boundaryVertex("K1", 0, rotate(inverse(fp, lab), 1), fp);
}

Picture dipolePicture(const GtgDescription& d) {
  Picture p = singleVertexPicture(d, 1);
  p.vertices[0].name = "u";
  PicVertex v{"v", -1, p.boundary, p.boundarySegments};
  p.vertices.push_back(std::move(v));
  p.boundary.clear();
  p.boundarySegments.clear();
  p.surface = Surface::Sphere;
  return p;
}

}  // namespace orp
