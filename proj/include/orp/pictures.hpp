#pragma once

// Pictures over G = (G1 * G2) / N(R^n), stored as rotation systems.
//
// Arc a owns darts 2a and 2a+1, so the mate of dart e is e ^ 1. A vertex lists its darts
// clockwise; corners[i] is the label between darts[i] and darts[i+1]. On a disc the boundary
// acts as one more vertex: `boundary` lists the darts met travelling along the boundary and
// boundarySegments[i] is the boundary label between boundary[i] and boundary[i+1]. Faces are
// the orbits of psi(e) = mate(next(e)), dart e standing for the corner just after it.
//
// A vertex of sign 0 is a clique: its corners may be words, and its label is a word in
// {a, U b U^{-1}} that has to be trivial in H.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orp/gtg.hpp"
#include "orp/hypothesis.hpp"
#include "orp/triangle.hpp"

namespace orp {

enum class Surface { Sphere, Disc };

constexpr int kBoundary = -1;

inline int mate(int e) { return e ^ 1; }
inline int arcOf(int e) { return e >> 1; }

struct PicVertex {
  std::string name;
  int sign = 1;  // +1 reads R^n, -1 reads R^{-n}, 0 marks a clique
  std::vector<int> darts;
  std::vector<FpWord> corners;

  std::size_t degree() const { return darts.size(); }
};

struct Picture {
  Surface surface = Surface::Disc;
  std::vector<PicVertex> vertices;
  std::vector<std::string> arcNames;
  std::vector<int> boundary;
  std::vector<FpWord> boundarySegments;
  std::optional<FpWord> declaredLabel;  // checked by validate when present

  std::size_t arcCount() const { return arcNames.size(); }
  std::size_t dartCount() const { return 2 * arcNames.size(); }
  std::optional<int> findVertex(const std::string& name) const;
};

struct DartSlot {
  int vertex = kBoundary;
  std::size_t slot = 0;
};

/// Derived incidence data. Throws InvalidPicture when a dart is missing or placed twice.
class Topology {
 public:
  explicit Topology(const Picture& p);

  const DartSlot& at(int e) const { return where_[static_cast<std::size_t>(e)]; }
  int vertexOf(int e) const { return at(e).vertex; }
  int next(int e) const;
  int prev(int e) const;
  int psi(int e) const { return mate(next(e)); }
  const FpWord& corner(int e) const;

  std::size_t faceCount() const { return faces_.size(); }
  const std::vector<int>& face(std::size_t f) const { return faces_[f]; }
  std::size_t faceOf(int e) const { return faceOf_[static_cast<std::size_t>(e)]; }
  bool touchesBoundary(std::size_t f) const;

  /// Connected components of vertices and arcs, the boundary counted as a vertex.
  /// Index vertices.size() stands for the boundary.
  const std::vector<int>& component() const { return component_; }
  int componentCount() const { return componentCount_; }

 private:
  const Picture* p_;
  std::vector<DartSlot> where_;
  std::vector<std::vector<int>> faces_;
  std::vector<std::size_t> faceOf_;
  std::vector<int> component_;
  int componentCount_ = 0;
};

/// Boundary segments read in order from boundary[0], normalized. Empty without boundary darts.
FpWord boundaryLabel(const Picture& p, const FreeProduct& fp);

struct Violation {
  std::string code;
  std::string where;
  std::string detail;
};

namespace violation {
inline constexpr const char* kStructure = "STRUCTURE";
inline constexpr const char* kLabel = "LABEL_MISMATCH";
inline constexpr const char* kCliqueLabel = "CLIQUE_LABEL";
inline constexpr const char* kArcFactor = "ARC_FACTOR";
inline constexpr const char* kRegionFactor = "REGION_FACTOR";
inline constexpr const char* kCorner = "CORNER_MISMATCH";
inline constexpr const char* kEuler = "EULER";
inline constexpr const char* kBoundaryLabel = "BOUNDARY_LABEL";
inline constexpr const char* kSphere = "SPHERE_BOUNDARY";
inline constexpr const char* kPiece = "PIECE_MISMATCH";
}  // namespace violation

struct ValidationReport {
  std::vector<Violation> violations;
  FpWord boundaryLabel;

  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const;
};

/// Checks labels, region factors, region triviality, planarity per component and the
/// declared boundary label. With a complete H table, clique labels must be trivial in H.
ValidationReport validate(const Picture& p, const GtgDescription& d, const CosetTable* h = nullptr);

/// Region label of face f, read from its least dart.
FpWord regionLabel(const Picture& p, const Topology& t, std::size_t f);

/// Corner positions: position of corners[i] in a rotation of the label parsing as
/// prod a^* U b^* U^{-1} is (i + offset) mod N. nullopt when some corner is not a single
/// letter or no rotation parses.
std::vector<std::optional<std::size_t>> vertexOffsets(const Picture& p, const GtgDescription& d);

/// Swaps the positions of darts x and y, reconnecting their arcs. Throws IllegalMove unless
/// both arcs border a common region and the result is a valid picture on the same surface.
Picture bridgeMove(const Picture& p, const GtgDescription& d, int x, int y, const CosetTable* h = nullptr);
/// Dart pairs whose arcs border a common region; not all of them are legal.
std::vector<std::pair<int, int>> bridgeCandidates(const Picture& p);
/// Candidates that bridgeMove accepts.
std::vector<std::pair<int, int>> legalBridges(const Picture& p, const GtgDescription& d,
                                              const CosetTable* h = nullptr);

/// Distinct vertices u, v joined by arc e whose labels, read clockwise from the corners after
/// the two ends of e, are mutually inverse words.
struct Dipole {
  int u = 0;
  int v = 0;
  int arc = 0;
};

std::optional<Dipole> dipoleAt(const Picture& p, const FreeProduct& fp);

struct DipoleSearch {
  std::optional<Dipole> dipole;
  std::vector<std::pair<int, int>> moves;  // bridge moves leading to it
  std::size_t statesExplored = 0;
  bool capped = false;  // the state cap stopped the search early
  int depth = 0;
};

DipoleSearch findDipole(const Picture& p, const GtgDescription& d, int depth = 3, std::size_t maxStates = 20000);

struct Zone {
  std::vector<int> arcs;
  std::array<int, 2> ends{kBoundary, kBoundary};
  std::array<std::vector<int>, 2> darts;  // darts of the arcs at each end, clockwise there
  bool closed = false;                    // the zone fills every corner between its arcs
  FpWord s, t;                            // corners between consecutive arcs at ends[0], ends[1]
  std::optional<std::size_t> sAnchor, tAnchor;
  bool piecesMatch = true;                // s == t^{-1} up to ~

  std::size_t omega() const { return arcs.size(); }
};

/// Maximal classes of parallel arcs. Two arcs are parallel when they are the only arcs of a
/// region with two corners; a boundary corner only counts when its segment is empty.
/// Anchors are filled in where labels parse; pieces are compared up to ~.
std::vector<Zone> zones(const Picture& p, const GtgDescription& d);

/// Class id per vertex of the closure of ~ (u ~ v across arc e when the corners after the two
/// ends sit at positions adding to 1 mod l). Throws NotMaximal if d has a refinement.
std::vector<int> cliqueRelation(const Picture& p, const GtgDescription& d);

struct CliquePicture {
  std::shared_ptr<const GtgDescription> desc;
  Picture map;                              // one sign-0 vertex per clique
  std::vector<std::vector<int>> members;    // source vertex ids per clique
  std::vector<PicVertex> memberVertices;    // copies, in source order
  std::vector<int> memberIds;               // source id of memberVertices[i]
  std::vector<int> arcOrigin;               // map arc -> source arc
  std::vector<int> internalArcs;            // source arcs inside cliques
  std::vector<std::string> internalNames;
  std::size_t sourceArcs = 0;
  std::vector<FpWord> labels;               // clique labels, cyclically reduced
  std::vector<bool> formOk;                 // label parses as prod a^* U b^* U^{-1}
  std::vector<std::size_t> unevenClasses;   // within-clique parallel class sizes not divisible by l/2
};

/// Contracts each class of cliqueRelation. Throws NotSimplyConnected when a class is not
/// connected or not a disc (a whole spherical component is accepted).
CliquePicture cliqueQuotient(const Picture& p, const GtgDescription& d);
/// Contracts an explicit partition (class id per vertex); the caller vouches for it.
CliquePicture contract(const Picture& p, const GtgDescription& d, const std::vector<int>& classes);
/// Rebuilds the contracted picture from the stored clique interiors.
Picture expansion(const CliquePicture& cp);

/// Number of zone ends at each vertex of the map.
std::vector<std::size_t> zoneDegrees(const Picture& p, const std::vector<Zone>& zs);
/// Vertices with no corner in a region that meets the boundary.
std::vector<bool> interiorVertices(const Picture& p);

struct C6Report {
  std::vector<std::pair<int, std::size_t>> lowDegree;  // interior clique, degree < 6
  bool holds() const { return lowDegree.empty(); }
};

C6Report c6Audit(const CliquePicture& cp);

struct ZoneBoundReport {
  Hypothesis hypothesis = Hypothesis::B;
  std::size_t threshold = 0;  // l for A, l/2 for B
  std::vector<std::size_t> flagged;  // indices into zones, both ends cliques, omega >= threshold
  std::vector<Zone> zones;
  bool holds() const { return flagged.empty(); }
};

/// Throws HypothesisFail when d does not satisfy the chosen hypothesis.
ZoneBoundReport zoneBoundAudit(const CliquePicture& cp, const GtgDescription& d, Hypothesis hyp);

struct CurvatureReport {
  long long lhs = 0;  // zone ends on the boundary
  long long rhs = 0;  // sum over cliques of deg - 6
  bool holds() const { return lhs >= rhs; }
};

/// Throws InvalidPicture for spherical maps.
CurvatureReport curvatureAudit(const CliquePicture& cp);

struct Od2Hit {
  std::size_t zone = 0;
  std::size_t j = 0, m = 0;
};

/// Zones between two cliques with s(i) + j == t(i) + m mod l for 1 <= j, m < omega.
std::vector<Od2Hit> od2Probe(const CliquePicture& cp, const GtgDescription& d);

/// "arc <name> <end> <end> zone <i> omega <w>" per arc.
std::string graphDump(const Picture& p, const std::vector<Zone>& zs);

/// Line format:
///   surface disc|sphere
///   vertex <v> sign +|- rotation <arc> ...      (a loop's second end is <arc>#2)
///   clique <v> rotation <arc> ...
///   arc <name> <v|boundary> <v|boundary>
///   corner <v> after <arc> <letters>            (or: corners <v> <one letter per corner>)
///   boundary <arc> ...                          (order along the boundary)
///   boundary_label after <arc> <letters>        (segment; "1" for empty)
///   boundary_label <letters>                    (expected label, compared cyclically)
/// Description lines in the same file are ignored.
Picture parsePicture(const std::string& text, const FreeProduct& fp);
std::string formatPicture(const Picture& p, const FreeProduct& fp);

/// One vertex of the given sign with every arc on the boundary; corner i is letter i of R^{sign n}.
Picture singleVertexPicture(const GtgDescription& d, int sign);
/// A clique with every arc on the boundary; the boundary reads `label` from boundary[0].
/// The clique label is the inverse of `label`.
Picture singleCliquePicture(const FpWord& label, const FreeProduct& fp);
/// Spherical picture: a positive and a negative vertex joined by l n parallel arcs.
Picture dipolePicture(const GtgDescription& d);

}  // namespace orp
