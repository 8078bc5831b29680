#pragma once
// Half-translation surfaces as polygons with edge gluings z -> +-z + c.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "flatlam/rational.hpp"

namespace flatlam {

enum class GluingKind { Translation, Flip };

struct Polygon {
  std::string id;
  std::vector<Vec2> vertices;  // counterclockwise

  std::size_t size() const { return vertices.size(); }
  const Vec2& vertex(std::size_t i) const { return vertices[i % vertices.size()]; }
  /// Edge i runs from vertex i to vertex i+1.
  Vec2 edge(std::size_t i) const { return vertex(i + 1) - vertex(i); }
  Rational signed_area() const;

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

struct EdgeRef {
  std::size_t polygon = 0;
  std::size_t index = 0;
  friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

struct Gluing {
  EdgeRef a;
  EdgeRef b;
  GluingKind kind = GluingKind::Translation;
  friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// Raw, unvalidated surface description (what the JSON file holds).
struct SurfaceData {
  std::vector<Polygon> polygons;
  std::vector<Gluing> gluings;
  friend bool operator==(const SurfaceData&, const SurfaceData&) = default;
};

struct Violation {
  std::string code;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& code) const;
};

struct InvalidSurface : std::runtime_error {
  ValidationReport report;
  explicit InvalidSurface(ValidationReport r);
};

struct AngleNotMultipleOfPi : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Lists every violated invariant; empty iff `data` is a valid
/// half-translation surface.
ValidationReport validate_surface(const SurfaceData& data);

struct CornerRef {
  std::size_t polygon = 0;
  std::size_t vertex = 0;
  friend auto operator<=>(const CornerRef&, const CornerRef&) = default;
};

/// Angular position on the link of a vertex class: halfturns * pi + phi where
/// phi in [0, pi) is the angle from the class axis to `residual`.
struct LinkAngle {
  long halfturns = 0;
  Vec2 residual;
};
int compare(const LinkAngle& a, const LinkAngle& b);
inline bool operator<(const LinkAngle& a, const LinkAngle& b) { return compare(a, b) < 0; }
inline bool operator<=(const LinkAngle& a, const LinkAngle& b) { return compare(a, b) <= 0; }
inline bool operator==(const LinkAngle& a, const LinkAngle& b) { return compare(a, b) == 0; }

/// One polygon corner inside a vertex class. Its sector runs ccw from `u`
/// (outgoing edge) to `w` (reversed incoming edge), in polygon coordinates.
/// `sign` maps local directions into the class frame.
struct Corner {
  CornerRef ref;
  int sign = 1;
  Vec2 u;
  Vec2 w;
  LinkAngle start;
};

/// A vertex class with total angle k*pi.
struct ConePoint {
  std::size_t id = 0;
  int k = 0;
  bool on_boundary = false;
  std::vector<Corner> corners;  // ccw
  Vec2 axis;                    // class-frame direction at link angle 0

  bool singular() const { return on_boundary ? k >= 2 : k >= 3; }
};

/// Germ of a geodesic ray issued from a vertex class. `dir` is a primitive
/// vector in the coordinates of `corner`'s polygon, inside the half-open
/// sector [u, w) (closed at the last corner of a boundary class).
struct Germ {
  std::size_t cone = 0;
  std::size_t corner = 0;
  Vec2 dir;
  friend bool operator==(const Germ& a, const Germ& b) {
    return a.cone == b.cone && a.corner == b.corner && a.dir == b.dir;
  }
  friend bool operator<(const Germ& a, const Germ& b) {
    if (a.cone != b.cone) return a.cone < b.cone;
    if (a.corner != b.corner) return a.corner < b.corner;
    return a.dir < b.dir;
  }
};

/// Point-to-point map between glued edges: z_to = eps * z_from + offset.
struct EdgeMap {
  EdgeRef to;
  GluingKind kind = GluingKind::Translation;
  std::size_t gluing = 0;
  int eps = 1;
  Vec2 offset;
  Vec2 apply(const Vec2& z) const { return eps * z + offset; }
  Vec2 apply_dir(const Vec2& d) const { return eps * d; }
};

struct Triangulation;

class HalfTranslationSurface {
 public:
  /// Validates and freezes the surface. Throws InvalidSurface.
  explicit HalfTranslationSurface(SurfaceData data);

  const SurfaceData& data() const { return data_; }
  const std::vector<Polygon>& polygons() const { return data_.polygons; }
  const Polygon& polygon(std::size_t i) const { return data_.polygons[i]; }
  const std::vector<Gluing>& gluings() const { return data_.gluings; }
  std::optional<std::size_t> polygon_index(const std::string& id) const;

  /// Map across the gluing of `e`, or nullopt for a boundary edge.
  const std::optional<EdgeMap>& across(EdgeRef e) const { return across_[e.polygon][e.index]; }
  bool is_boundary(EdgeRef e) const { return !across(e).has_value(); }

  const std::vector<ConePoint>& vertex_classes() const { return classes_; }
  const ConePoint& vertex_class(std::size_t i) const { return classes_[i]; }
  std::size_t class_of(CornerRef c) const { return corner_class_[c.polygon][c.vertex]; }
  std::size_t corner_index(CornerRef c) const { return corner_pos_[c.polygon][c.vertex]; }
  const Corner& corner(std::size_t cone, std::size_t idx) const { return classes_[cone].corners[idx]; }
  std::size_t singularity_count() const;

  /// Germ at corner `c` in local direction `dir`, which must lie in the
  /// closed sector of `c`. Canonicalizes sector-boundary directions.
  Germ make_germ(CornerRef c, const Vec2& dir) const;
  LinkAngle position(const Germ& g) const;
  Germ germ_at(std::size_t cone, const LinkAngle& a) const;
  /// a + n*pi, reduced modulo the total angle for interior classes.
  LinkAngle rotate(std::size_t cone, const LinkAngle& a, long n) const;
  /// Link angle measured ccw from `from` to `to` is at least n*pi.
  bool ccw_angle_at_least(std::size_t cone, const LinkAngle& from, const LinkAngle& to, long n) const;
  /// Link angle ccw from `from` to `to` is exactly n*pi.
  bool ccw_angle_equals(std::size_t cone, const LinkAngle& from, const LinkAngle& to, long n) const;

  Rational area() const;
  int euler_characteristic() const;
  int boundary_components() const;
  int genus() const;

  const Triangulation& triangulation() const { return *tri_; }

 private:
  SurfaceData data_;
  std::vector<std::vector<std::optional<EdgeMap>>> across_;
  std::vector<ConePoint> classes_;
  std::vector<std::vector<std::size_t>> corner_class_;
  std::vector<std::vector<std::size_t>> corner_pos_;
  std::map<std::string, std::size_t> index_;
  std::shared_ptr<const Triangulation> tri_;
};

/// Singular vertex classes (k >= 3 interior, k >= 2 boundary).
std::vector<ConePoint> compute_singularities(const HalfTranslationSurface& s);
int euler_characteristic(const HalfTranslationSurface& s);

/// Edge map for an explicit gluing read from `from`'s side.
EdgeMap make_edge_map(const SurfaceData& data, std::size_t gluing, bool from_a);

}  // namespace flatlam
