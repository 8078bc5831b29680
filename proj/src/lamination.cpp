#include "flatlam/lamination.hpp"

#include <algorithm>
#include <map>

namespace flatlam {

const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::User: return "user";
    case Provenance::CylinderCore: return "cylinder-core";
    case Provenance::SeparatrixCycle: return "separatrix-cycle";
  }
  return "?";
}

bool same_leaf(const ClosedGeodesic& a, const ClosedGeodesic& b) {
  if (a.singular() != b.singular()) return false;
  if (a.singular()) {
    if (a.legs().size() != b.legs().size()) return false;
    for (std::size_t i = 0; i < a.legs().size(); ++i)
      if (!(a.legs()[i].from == b.legs()[i].from) || !(a.legs()[i].holonomy == b.legs()[i].holonomy)) return false;
    return true;
  }
  const Segment& x = a.trajectory().segments.front();
  const Segment& y = b.trajectory().segments.front();
  return x.polygon == y.polygon && x.from == y.from && same_ray(x.sign * a.trajectory().dir, y.sign * b.trajectory().dir);
}

LeafFamily close_under_reversal(LeafFamily f) {
  std::size_t n = f.leaves.size();
  f.provenance.resize(n, Provenance::User);
  for (std::size_t i = 0; i < n; ++i) {
    ClosedGeodesic r = f.leaves[i].reversed();
    bool present = std::any_of(f.leaves.begin(), f.leaves.end(), [&](const ClosedGeodesic& g) { return same_leaf(g, r); });
    if (present) continue;
    f.leaves.push_back(std::move(r));
    f.provenance.push_back(f.provenance[i]);
    if (f.declared_full.count(i)) f.declared_full.insert(f.leaves.size() - 1);
  }
  return f;
}

LeafFamily family_from_direction(const HalfTranslationSurface& s, const DirectionClassification& c) {
  LeafFamily f;
  for (const auto& cyl : c.cylinders) {
    f.leaves.push_back(ClosedGeodesic::from_trajectory(s, cyl.core_curve));
    f.provenance.push_back(Provenance::CylinderCore);
  }
  f.candidate_domains = c.domains;
  return close_under_reversal(std::move(f));
}

FamilyReport validate_family(const HalfTranslationSurface& s, const LeafFamily& f) {
  FamilyReport r;
  auto add = [&](std::string code, std::string msg) { r.violations.push_back(Violation{std::move(code), std::move(msg)}); };
  for (std::size_t i = 0; i < f.leaves.size(); ++i) {
    if (&f.leaves[i].surface() != &s) {
      add("wrong-surface", "leaf " + std::to_string(i) + " lives on another surface");
      return r;
    }
  }
  for (std::size_t i = 0; i < f.leaves.size(); ++i) {
    if (is_self_linked(f.leaves[i])) add("self-linked", "leaf " + std::to_string(i) + " is self-linked");
    ClosedGeodesic rev = f.leaves[i].reversed();
    if (std::none_of(f.leaves.begin(), f.leaves.end(), [&](const ClosedGeodesic& g) { return same_leaf(g, rev); }))
      add("missing-reversal", "reversal of leaf " + std::to_string(i) + " is not in the family");
    for (std::size_t j = i + 1; j < f.leaves.size(); ++j)
      if (are_linked(f.leaves[i], f.leaves[j]))
        add("linked-pair", "leaves " + std::to_string(i) + " and " + std::to_string(j) + " are linked");
  }
  try {
    r.bound = check_family_bounds(s, f.leaves);
    if (!r.bound->within())
      add("bound-exceeded", std::to_string(r.bound->saddle_connections) + " saddle connections exceed the bound " +
                                std::to_string(r.bound->bound));
  } catch (const FamilyIsLinked& e) {
    add("family-is-linked", e.what());
  }
  return r;
}

ImageGraph image_graph(const ClosedGeodesic& c) {
  ImageGraph g;
  if (!c.singular()) return g;
  std::set<std::size_t> vs;
  std::set<ConnectionKey> es;
  std::map<std::size_t, int> valence;
  for (const auto& l : c.legs()) {
    vs.insert(l.from.cone);
    ConnectionKey fwd{l.from, l.holonomy};
    ConnectionKey bwd{l.to, (norm2(l.holonomy) / abs(dot(l.holonomy, l.to.dir))) * l.to.dir};
    if (es.insert(std::min(fwd, bwd)).second) {
      ++valence[l.from.cone];
      ++valence[l.to.cone];
    }
  }
  g.vertices.assign(vs.begin(), vs.end());
  g.edges.assign(es.begin(), es.end());
  g.circle = std::all_of(valence.begin(), valence.end(), [](const auto& v) { return v.second == 2; });
  return g;
}

namespace {

bool cylinder_less(const Cylinder& a, const Cylinder& b) {
  if (a.circumference_sq != b.circumference_sq) return a.circumference_sq < b.circumference_sq;
  if (a.height_sq != b.height_sq) return a.height_sq < b.height_sq;
  if (a.area != b.area) return a.area < b.area;
  return Direction(a.circumference) < Direction(b.circumference);
}

bool image_less(const ImageGraph& a, const ImageGraph& b) {
  if (a.edges != b.edges) return a.edges < b.edges;
  return a.vertices < b.vertices;
}

}  // namespace

ComponentReport classify_components(const HalfTranslationSurface& s, const LeafFamily& f) {
  ComponentReport r;
  std::vector<std::pair<ImageGraph, std::size_t>> singular;
  for (std::size_t i = 0; i < f.leaves.size(); ++i) {
    const ClosedGeodesic& leaf = f.leaves[i];
    if (leaf.singular()) {
      singular.push_back({image_graph(leaf), i});
      continue;
    }
    Cylinder c = maximal_cylinder(s, leaf.trajectory());
    auto it = std::find_if(r.cylindrical.begin(), r.cylindrical.end(),
                           [&](const CylindricalComponent& k) { return same_cylinder(k.cylinder, c); });
    if (it == r.cylindrical.end()) {
      r.cylindrical.push_back(CylindricalComponent{std::move(c), {}, false});
      it = std::prev(r.cylindrical.end());
    }
    it->leaves.push_back(i);
    if (f.declared_full.count(i)) it->declared_full = true;
  }
  for (auto& [image, i] : singular) {
    if (image.circle) {
      auto it = std::find_if(r.periodic_pairs.begin(), r.periodic_pairs.end(),
                             [&](const PeriodicPair& p) { return p.image == image; });
      if (it == r.periodic_pairs.end()) {
        r.periodic_pairs.push_back(PeriodicPair{image, {}});
        it = std::prev(r.periodic_pairs.end());
      }
      it->leaves.push_back(i);
      continue;
    }
    auto it = std::find_if(r.graph_support.begin(), r.graph_support.end(),
                           [&](const GraphComponent& g) { return g.image == image; });
    if (it == r.graph_support.end()) {
      r.graph_support.push_back(GraphComponent{image, {}});
      it = std::prev(r.graph_support.end());
    }
    it->leaves.push_back(i);
  }
  std::sort(r.cylindrical.begin(), r.cylindrical.end(),
            [](const CylindricalComponent& a, const CylindricalComponent& b) { return cylinder_less(a.cylinder, b.cylinder); });
  std::sort(r.graph_support.begin(), r.graph_support.end(),
            [](const GraphComponent& a, const GraphComponent& b) { return image_less(a.image, b.image); });
  std::sort(r.periodic_pairs.begin(), r.periodic_pairs.end(),
            [](const PeriodicPair& a, const PeriodicPair& b) { return image_less(a.image, b.image); });
  r.candidate_minimal_domains = f.candidate_domains;
  if (r.component_count() > f.leaves.size()) throw std::logic_error("more components than leaves");
  return r;
}

Fullness cylindrical_component_fullness(const HalfTranslationSurface&, const CylindricalComponent& c) {
  Fullness f;
  f.full = c.declared_full;
  f.covered_height = 0;
  if (f.full) {
    if (auto h = c.cylinder.height()) f.covered_height = *h;
  }
  return f;
}

}  // namespace flatlam
