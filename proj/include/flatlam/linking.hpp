#pragma once
// Linking of closed flat geodesics, decided on the surface from transverse
// crossings and cyclic orders of germs at cone points.

#include <optional>
#include <stdexcept>
#include <vector>

#include "flatlam/tracer.hpp"

namespace flatlam {

struct GermsAtDifferentCones : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DifferentSurfaces : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct FamilyIsLinked : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Cyclic order of three germs around their common cone point: 0 if two
/// coincide, +1 if counterclockwise.
int germ_cyclic_order(const HalfTranslationSurface& s, const Germ& a, const Germ& b, const Germ& c);

// One straight leg of a singular closed geodesic, between two cone points.
struct GeodesicLeg {
  Germ from;
  Germ to;  // backward germ at the far end
  Vec2 holonomy;
  Trajectory trace;
};

class ClosedGeodesic {
 public:
  /// A closed regular trajectory. Throws std::invalid_argument if t is not
  /// Closed.
  static ClosedGeodesic from_trajectory(const HalfTranslationSurface& s, const Trajectory& t);
  /// A closed path of legs; breakpoints at regular points are merged away.
  /// Throws MalformedPath if the path is not a closed local geodesic.
  static ClosedGeodesic from_path(const HalfTranslationSurface& s, const GeodesicPath& p);

  const HalfTranslationSurface& surface() const { return *s_; }
  bool singular() const { return !legs_.empty(); }
  /// Legs starting at singularities, rotated to the least (germ, holonomy)
  /// sequence.
  const std::vector<GeodesicLeg>& legs() const { return legs_; }
  /// Regular geodesics only, restarted at the least crossing point.
  const Trajectory& trajectory() const { return regular_; }
  /// Singular geodesics only.
  GeodesicPath path() const;
  ClosedGeodesic reversed() const;

 private:
  ClosedGeodesic() = default;
  static ClosedGeodesic from_legs(const HalfTranslationSurface& s, std::vector<GeodesicLeg> legs);
  const HalfTranslationSurface* s_ = nullptr;
  std::vector<GeodesicLeg> legs_;
  Trajectory regular_;
};

struct IntersectionEvent {
  enum Kind { TransverseRegular, IsolatedSingular, SharedArc } kind = TransverseRegular;
  SurfacePoint point;  // TransverseRegular
  std::size_t x1 = 0;  // cone of an isolated event, or start of the shared arc
  std::size_t x2 = 0;  // end of the shared arc
  // r1 germs belong to the first geodesic, r2 to the second, r0 to the shared
  // arc. Minus germs sit at x1, plus germs at x2 (both at x1 when isolated).
  Germ r1_minus, r1_plus, r2_minus, r2_plus, r0_minus, r0_plus;
  Rational t1, t2;          // parameters on each geodesic (leg index for singular ones)
  std::size_t arc_legs = 0;
  bool opposite = false;    // shared arc run in opposite directions
  bool linked = false;
};

struct IntersectionPattern {
  bool same_image = false;
  std::vector<IntersectionEvent> events;
  bool linked() const;
};

IntersectionPattern intersection_pattern(const ClosedGeodesic& c1, const ClosedGeodesic& c2);
bool are_linked(const ClosedGeodesic& c1, const ClosedGeodesic& c2);
/// Events of c against itself, the identity overlap excluded.
IntersectionPattern self_pattern(const ClosedGeodesic& c);
bool is_self_linked(const ClosedGeodesic& c);

struct BoundReport {
  std::size_t saddle_connections = 0;
  long bound = 0;
  bool within() const { return static_cast<long>(saddle_connections) <= bound; }
};

/// Distinct saddle connections used by a non-linked family against
/// k^2 (6g + 3b - 2), k the number of singularities. Throws FamilyIsLinked.
BoundReport check_family_bounds(const HalfTranslationSurface& s, const std::vector<ClosedGeodesic>& family);

}  // namespace flatlam
