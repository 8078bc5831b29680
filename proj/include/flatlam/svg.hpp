#pragma once
// SVG drawings in the developed plane. Coordinates are printed with 12
// decimals; this rounding is for display only.

#include <string>

#include "flatlam/flow.hpp"

namespace flatlam {

/// Polygon outlines, axes and one line per traced segment.
std::string render_svg(const HalfTranslationSurface& s, const Trajectory& t);
/// Polygon outlines with every cylinder shaded as its own band.
std::string render_svg(const HalfTranslationSurface& s, const DirectionClassification& c);

}  // namespace flatlam
