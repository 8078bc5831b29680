#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "flatlam/surface.hpp"

namespace rect_oracle {

using namespace flatlam;

// Independent oracle: identify rectangle corners by union-find over edge
// endpoint identifications and count right angles per class.
inline std::map<std::size_t, int> corner_counts(const SurfaceData& d, std::size_t& classes) {
  std::size_t n = d.polygons.size();
  std::vector<std::size_t> parent(4 * n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  auto id = [](EdgeRef e, std::size_t end) { return 4 * e.polygon + (e.index + end) % 4; };
  for (const auto& g : d.gluings) {
    // Translation: a.start ~ b.end and a.end ~ b.start; flip: a.start ~ b.end as well (z -> -z + c swaps).
    parent[find(id(g.a, 0))] = find(id(g.b, 1));
    parent[find(id(g.a, 1))] = find(id(g.b, 0));
  }
  std::map<std::size_t, int> count;
  for (std::size_t c = 0; c < 4 * n; ++c) ++count[find(c)];
  classes = count.size();
  return count;
}

}  // namespace rect_oracle
