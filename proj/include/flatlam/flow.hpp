#pragma once
// Constant-direction flow: separatrix diagrams, cylinder decompositions and
// maximal cylinders.

#include <optional>
#include <stdexcept>
#include <vector>

#include "flatlam/saddle.hpp"

namespace flatlam {

struct InternalDecompositionError : std::logic_error {
  using std::logic_error::logic_error;
};
struct NotPeriodic : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PassesThroughSingularity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Separatrix {
  Germ germ;
  Trajectory trajectory;
};

struct OpenRay {
  Germ germ;
  Rational traced_sq_length;
};

struct SeparatrixDiagram {
  Direction direction{Vec2(1, 0)};
  /// All outgoing germs parallel to the direction, with their traces.
  std::vector<Separatrix> separatrices;
  /// Distinct saddle connections among them, canonical orientation, sorted.
  std::vector<SaddleConnection> closed;
  /// Rays that reached the surface boundary transversally.
  std::vector<Separatrix> to_boundary;
  std::vector<OpenRay> open_rays;
};

SeparatrixDiagram separatrix_diagram(const HalfTranslationSurface& s, const Direction& d,
                                     const Rational& max_sq_length);

/// Convex piece of a polygon, in that polygon's coordinates.
struct Region {
  std::size_t polygon = 0;
  std::vector<Vec2> vertices;
};

struct Cylinder {
  /// Holonomy of the core curve, a positive multiple of the direction vector.
  Vec2 circumference;
  Rational circumference_sq;
  /// Heights are usually irrational; height_sq is exact.
  Rational height_sq;
  Rational area;
  /// Boundary saddle connections on the left (top) and right (bottom) of the
  /// flow direction, sorted and deduplicated, plus surface-boundary edges.
  std::vector<SaddleConnection> top;
  std::vector<SaddleConnection> bottom;
  std::vector<EdgeRef> top_edges;
  std::vector<EdgeRef> bottom_edges;
  Trajectory core_curve;
  /// Pieces tiling the cylinder, for drawing.
  std::vector<Region> regions;

  /// Exact height when height_sq is a rational square.
  std::optional<Rational> height() const;
};

bool same_cylinder(const Cylinder& a, const Cylinder& b);

struct CandidateDomain {
  Rational area;
  /// Critical-trajectory boundary as a multigraph: indices into the diagram's
  /// closed list (with multiplicity), surface-boundary edges and open rays.
  std::vector<std::size_t> boundary_saddles;
  std::vector<EdgeRef> boundary_edges;
  std::vector<std::size_t> open_rays;
};

enum class Outcome { Periodic, Mixed, Undetermined };
const char* to_string(Outcome o);

struct DirectionClassification {
  Direction direction{Vec2(1, 0)};
  Outcome outcome = Outcome::Undetermined;
  std::vector<Cylinder> cylinders;
  std::vector<CandidateDomain> domains;
  SeparatrixDiagram diagram;
  Rational budget;
};

/// Cuts the surface along the separatrices parallel to d and checks every
/// complementary piece. Budgets bound each separatrix trace individually.
DirectionClassification cylinder_decomposition(const HalfTranslationSurface& s, const Direction& d,
                                               const Rational& max_sq_length);

/// The maximal flat cylinder containing a closed regular trajectory.
Cylinder maximal_cylinder(const HalfTranslationSurface& s, const Trajectory& periodic);

/// Direction of the traced portion after the last cone transition.
std::optional<Direction> constant_direction_tail(const HalfTranslationSurface& s, const Trajectory& t);
std::optional<Direction> constant_direction_tail(const HalfTranslationSurface& s, const GeodesicPath& p);

}  // namespace flatlam
