#pragma once
// Saddle-connection enumeration by exact unfolding.

#include <vector>

#include "flatlam/tracer.hpp"

namespace flatlam {

struct SaddleConnection {
  Germ from;
  Germ to;         // backward germ at the far end
  Vec2 holonomy;   // in the frame of from's polygon
  std::vector<Crossing> itinerary;
  Rational sq_length;
};

/// Reverse holonomy expressed in the frame of the far corner.
Vec2 reverse_holonomy(const HalfTranslationSurface& s, const SaddleConnection& c);

/// Saddle connection traced by `t` (which must end at a singularity), put in
/// the canonical orientation: the smaller of (start germ, holonomy) and
/// (end germ, reverse holonomy).
SaddleConnection canonical_connection(const HalfTranslationSurface& s, const Trajectory& t);

/// Every saddle connection with squared length <= max_sq_length, each listed
/// once in a canonical orientation, sorted by (squared length, itinerary,
/// start germ, holonomy). `jobs` > 1 partitions the search by start corner.
std::vector<SaddleConnection> saddle_connections(const HalfTranslationSurface& s, const Rational& max_sq_length,
                                                 unsigned jobs = 1);

}  // namespace flatlam
