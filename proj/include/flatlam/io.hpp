#pragma once
// JSON files: surfaces, ribbon graphs, closed geodesics, leaf families and
// trajectory dumps. Rationals travel as "p/q" strings.

#include <json.hpp>
#include <string>

#include "flatlam/lamination.hpp"
#include "flatlam/ribbon.hpp"

namespace flatlam::io {

using json = nlohmann::ordered_json;

/// Reads and parses a JSON file. Throws ParseError with "file:line:col".
json read_json_file(const std::string& path);

Rational rational_from_json(const json& j, const std::string& where);
json to_json(const Rational& r);
Vec2 vec_from_json(const json& j, const std::string& where);
json to_json(const Vec2& v);

// The parsers throw ParseError naming the offending JSON pointer.
SurfaceData surface_from_json(const json& j);
json to_json(const SurfaceData& d);

RibbonGraph graph_from_json(const json& j);
json to_json(const RibbonGraph& g);

/// Regular geodesics carry a start point, a direction and the period
/// itinerary, which is checked against the traced orbit. Singular ones list
/// their legs.
ClosedGeodesic geodesic_from_json(const HalfTranslationSurface& s, const json& j);
json to_json(const HalfTranslationSurface& s, const ClosedGeodesic& c);

LeafFamily family_from_json(const HalfTranslationSurface& s, const json& j);
json to_json(const HalfTranslationSurface& s, const LeafFamily& f);

SurfaceData load_surface(const std::string& path);
RibbonGraph load_graph(const std::string& path);
ClosedGeodesic load_geodesic(const HalfTranslationSurface& s, const std::string& path);
LeafFamily load_family(const HalfTranslationSurface& s, const std::string& path);

/// One JSON object per line: each segment, then a summary line.
std::string trajectory_lines(const HalfTranslationSurface& s, const Trajectory& t);

}  // namespace flatlam::io
