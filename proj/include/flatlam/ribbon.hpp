#pragma once
// Cyclically ordered metric graphs and the cylinder construction that embeds
// them in flat surfaces.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatlam/surface.hpp"

namespace flatlam {

struct InvalidRibbonGraph : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonIntegralGenus : std::logic_error {
  using std::logic_error::logic_error;
};
struct CrossCheckMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

struct RibbonEdge {
  std::string id;
  std::size_t ends[2] = {0, 0};
  Rational length = 1;
};

// Half-edge 2e leaves ends[0] ("id+"), 2e+1 leaves ends[1] ("id-").
class RibbonGraph {
 public:
  /// `order[v]` lists the half-edges at vertex v in cyclic order. Throws
  /// InvalidRibbonGraph.
  RibbonGraph(std::vector<std::string> vertices, std::vector<RibbonEdge> edges,
              std::vector<std::vector<std::size_t>> order);
  /// Same, with half-edges named "id+" / "id-".
  static RibbonGraph from_names(std::vector<std::string> vertices, std::vector<RibbonEdge> edges,
                                const std::map<std::string, std::vector<std::string>>& order);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t half_edge_count() const { return 2 * edges_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<RibbonEdge>& edges() const { return edges_; }
  const std::vector<std::size_t>& order(std::size_t v) const { return order_[v]; }

  static std::size_t opposite(std::size_t h) { return h ^ 1; }
  std::size_t vertex_of(std::size_t h) const { return edges_[h / 2].ends[h % 2]; }
  std::size_t successor(std::size_t h) const { return succ_[h]; }
  std::string name(std::size_t h) const { return edges_[h / 2].id + (h % 2 ? "-" : "+"); }
  const Rational& length(std::size_t h) const { return edges_[h / 2].length; }

 private:
  std::vector<std::string> vertices_;
  std::vector<RibbonEdge> edges_;
  std::vector<std::vector<std::size_t>> order_;
  std::vector<std::size_t> succ_;
};

struct RightTurnCycle {
  std::vector<std::size_t> half_edges;
  Rational length;
};

/// Cycles of h -> successor(opposite(h)), each starting at its smallest
/// half-edge, ordered by that half-edge.
std::vector<RightTurnCycle> right_turn_cycles(const RibbonGraph& g);

/// One height-1 cylinder per right-turn cycle, its bottom glued to the graph
/// and its top left as boundary.
SurfaceData build_surface_data(const RibbonGraph& g);
HalfTranslationSurface build_surface(const RibbonGraph& g);

struct SurfaceInvariants {
  long chi = 0;
  long boundary = 0;
  long genus = 0;
  friend bool operator==(const SurfaceInvariants&, const SurfaceInvariants&) = default;
};

SurfaceInvariants surface_invariants(const RibbonGraph& g);

enum class ExceptionalKind { None, Circle, Dumbbell, FlatEight, FlatTheta };
const char* to_string(ExceptionalKind k);

/// Isomorphism test against the four exceptional graphs (mirrors included),
/// checked against the built surface being an annulus or a pair of pants.
ExceptionalKind is_exceptional(const RibbonGraph& g);

/// n <= 6g + 3b - 3.
bool bouquet_bound(long genus, long boundary, long n);
/// n <= 6g + 3b - 2.
bool arc_bound(long genus, long boundary, long n);

}  // namespace flatlam
