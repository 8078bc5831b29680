#pragma once
// Finite leaf families as skeletons of flat laminations, and their
// decomposition into cylindrical, graph-supported and periodic components.

#include <optional>
#include <set>
#include <vector>

#include "flatlam/flow.hpp"
#include "flatlam/linking.hpp"

namespace flatlam {

enum class Provenance { User, CylinderCore, SeparatrixCycle };
const char* to_string(Provenance p);

struct LeafFamily {
  std::vector<ClosedGeodesic> leaves;
  std::vector<Provenance> provenance;
  /// Leaves whose maximal cylinder is declared laminated by the full interval
  /// of parallel leaves.
  std::set<std::size_t> declared_full;
  /// Carried over when the family comes from a direction classification.
  std::vector<CandidateDomain> candidate_domains;
};

/// Same closed geodesic with the same orientation.
bool same_leaf(const ClosedGeodesic& a, const ClosedGeodesic& b);

/// Appends the reversal of every leaf whose reversal is missing.
LeafFamily close_under_reversal(LeafFamily f);

/// Core curves of the cylinders of a decomposition, with reversals.
LeafFamily family_from_direction(const HalfTranslationSurface& s, const DirectionClassification& c);

struct FamilyReport {
  std::vector<Violation> violations;
  std::optional<BoundReport> bound;
  bool ok() const { return violations.empty(); }
};

/// Self-linking, pairwise linking, reversal closure and the connection bound.
FamilyReport validate_family(const HalfTranslationSurface& s, const LeafFamily& f);

struct CylindricalComponent {
  Cylinder cylinder;
  std::vector<std::size_t> leaves;
  bool declared_full = false;
};

// Undirected saddle connection in canonical orientation.
struct ConnectionKey {
  Germ from;
  Vec2 holonomy;
  friend bool operator==(const ConnectionKey&, const ConnectionKey&) = default;
  friend bool operator<(const ConnectionKey& a, const ConnectionKey& b) {
    if (!(a.from == b.from)) return a.from < b.from;
    return a.holonomy < b.holonomy;
  }
};

struct ImageGraph {
  std::vector<std::size_t> vertices;  // cone ids
  std::vector<ConnectionKey> edges;
  /// Every vertex has valence two: the image is a simple closed curve.
  bool circle = false;
  friend bool operator==(const ImageGraph&, const ImageGraph&) = default;
};

ImageGraph image_graph(const ClosedGeodesic& c);

struct GraphComponent {
  ImageGraph image;
  std::vector<std::size_t> leaves;
};

struct PeriodicPair {
  ImageGraph image;
  std::vector<std::size_t> leaves;
};

struct ComponentReport {
  std::vector<CylindricalComponent> cylindrical;
  std::vector<GraphComponent> graph_support;
  std::vector<PeriodicPair> periodic_pairs;
  /// Always empty: closed leaves never land on another component.
  std::vector<std::size_t> isolated;
  std::vector<CandidateDomain> candidate_minimal_domains;
  std::size_t component_count() const {
    return cylindrical.size() + graph_support.size() + periodic_pairs.size() + isolated.size();
  }
};

ComponentReport classify_components(const HalfTranslationSurface& s, const LeafFamily& f);

struct Fullness {
  bool full = false;
  Rational covered_height = 0;
};

Fullness cylindrical_component_fullness(const HalfTranslationSurface& s, const CylindricalComponent& c);

}  // namespace flatlam
