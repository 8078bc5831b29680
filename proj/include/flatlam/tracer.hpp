#pragma once
// Exact straight-line flow on a half-translation surface and flat local
// geodesics through cone points.

#include <compare>
#include <optional>
#include <stdexcept>
#include <vector>

#include "flatlam/surface.hpp"

namespace flatlam {

struct PointOutsideSurface : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedPath : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SurfacePoint {
  std::size_t polygon = 0;
  Vec2 coords;
  friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;
};

/// Canonical representative of a point: a vertex point is reported at the
/// smallest corner of its class, an edge point on the glued side with the
/// lowest (polygon, edge). Throws PointOutsideSurface.
SurfacePoint canonical_point(const HalfTranslationSurface& s, const SurfacePoint& p);

/// One step of the crossing itinerary: a glued edge (by gluing index) or a
/// regular vertex class passed straight through.
struct Crossing {
  enum Kind { Edge, Vertex } kind = Edge;
  std::size_t index = 0;
  friend auto operator<=>(const Crossing&, const Crossing&) = default;
};

enum class Termination { HitSingularity, Closed, LengthBudget, HitBoundary };
const char* to_string(Termination t);

struct Segment {
  std::size_t polygon = 0;
  Vec2 from;
  Vec2 to;
  /// Local direction of this segment is sign * (trajectory direction).
  int sign = 1;
};

struct Trajectory {
  SurfacePoint start;
  Vec2 dir;  // in the start polygon's coordinates
  std::optional<Germ> start_germ;
  std::vector<Segment> segments;
  std::vector<Crossing> itinerary;
  /// Total flow time: the traced path develops to parameter * dir.
  Rational parameter = 0;
  Termination termination = Termination::LengthBudget;
  /// Germ pointing back along the path at the singularity reached.
  std::optional<Germ> end_germ;
  std::optional<EdgeRef> boundary_edge;
  bool half_period_flip = false;

  Vec2 holonomy() const { return parameter * dir; }
  Rational sq_length() const { return parameter * parameter * norm2(dir); }
};

/// Straight flow from p in direction d (p's polygon coordinates). Stops at a
/// singular cone point, on return to (p, d), when the next event would exceed
/// max_sq_length (only whole pieces are kept), or at the boundary.
Trajectory shoot(const HalfTranslationSurface& s, const SurfacePoint& p, const Vec2& d,
                 const Rational& max_sq_length);
/// Flow issued from a germ; the trajectory direction is g.dir.
Trajectory shoot(const HalfTranslationSurface& s, const Germ& g, const Rational& max_sq_length);

/// Straight leg from `from` with developed displacement `holonomy` (a positive
/// multiple of from.dir). The leg must end at a vertex class point and meet no
/// singularity before. Throws MalformedPath otherwise.
struct Leg {
  Trajectory trajectory;
  Germ end;  // backward germ at the arrival vertex
};
Leg trace_leg(const HalfTranslationSurface& s, const Germ& from, const Vec2& holonomy);

enum class Policy { Enumerate, RightTight, LeftTight };

struct Continuations {
  std::vector<Germ> germs;
  /// Every germ strictly between the two returned extremes is also legal.
  bool continuum = false;
  /// False at regular points, where the straight continuation is forced.
  bool branching = false;
};

/// Legal outgoing germs after arriving with backward germ `incoming`.
/// Right means the side swept ccw from the incoming germ.
Continuations continuations(const HalfTranslationSurface& s, const Germ& incoming, Policy policy);

/// Local geodesic condition at a cone point: both side angles between the
/// backward germ `in` and the outgoing germ `out` are at least pi.
bool is_legal_transition(const HalfTranslationSurface& s, const Germ& in, const Germ& out);

/// Piecewise straight path whose breakpoints are vertex class points.
struct PathLeg {
  Germ from;
  Vec2 holonomy;
};
struct GeodesicPath {
  std::vector<PathLeg> legs;
  bool closed = false;
};

/// Throws MalformedPath when the legs do not chain or a leg is not straight.
bool is_local_geodesic(const HalfTranslationSurface& s, const GeodesicPath& path);

}  // namespace flatlam
