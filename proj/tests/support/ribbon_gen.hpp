#pragma once
// Reference and random ribbon graphs for tests.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "flatlam/ribbon.hpp"

namespace ribbon_gen {

using flatlam::RibbonEdge;
using flatlam::RibbonGraph;

inline RibbonEdge edge(std::string id, std::size_t a, std::size_t b, flatlam::Rational len = 1) {
  RibbonEdge e;
  e.id = std::move(id);
  e.ends[0] = a;
  e.ends[1] = b;
  e.length = len;
  return e;
}

// Two vertices joined by two edges.
inline RibbonGraph circle() {
  return RibbonGraph({"u", "v"}, {edge("a", 0, 1), edge("b", 1, 0)}, {{0, 3}, {1, 2}});
}

inline RibbonGraph flat_theta() {
  return RibbonGraph::from_names({"u", "v"}, {edge("a", 0, 1), edge("b", 0, 1), edge("c", 0, 1)},
                                 {{"u", {"a+", "b+", "c+"}}, {"v", {"c-", "b-", "a-"}}});
}

inline RibbonGraph twisted_theta() {
  return RibbonGraph::from_names({"u", "v"}, {edge("a", 0, 1), edge("b", 0, 1), edge("c", 0, 1)},
                                 {{"u", {"a+", "b+", "c+"}}, {"v", {"a-", "b-", "c-"}}});
}

inline RibbonGraph dumbbell() {
  return RibbonGraph::from_names({"u", "v"}, {edge("a", 0, 0), edge("b", 1, 1), edge("c", 0, 1)},
                                 {{"u", {"a+", "a-", "c+"}}, {"v", {"b+", "b-", "c-"}}});
}

inline RibbonGraph flat_eight() {
  return RibbonGraph::from_names({"o"}, {edge("a", 0, 0), edge("b", 0, 0)}, {{"o", {"a+", "a-", "b+", "b-"}}});
}

inline RibbonGraph interleaved_rose() {
  return RibbonGraph::from_names({"o"}, {edge("a", 0, 0), edge("b", 0, 0)}, {{"o", {"a+", "b+", "a-", "b-"}}});
}

// Connected graph with valences in [2, 5] and at most max_edges edges, random
// stub matching and random cyclic orders.
inline RibbonGraph random_graph(std::mt19937& rng, std::size_t max_edges) {
  std::uniform_int_distribution<int> val(2, 5);
  std::uniform_int_distribution<long> len(1, 4);
  while (true) {
    std::size_t nv = std::uniform_int_distribution<std::size_t>(1, max_edges)(rng);
    std::vector<std::size_t> stubs;
    for (std::size_t v = 0; v < nv; ++v)
      for (int k = val(rng); k > 0; --k) stubs.push_back(v);
    if (stubs.size() % 2 || stubs.size() > 2 * max_edges) continue;
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<RibbonEdge> edges;
    std::vector<std::vector<std::size_t>> order(nv);
    for (std::size_t i = 0; i < stubs.size(); i += 2) {
      edges.push_back(edge("e" + std::to_string(i / 2), stubs[i], stubs[i + 1], len(rng)));
      order[stubs[i]].push_back(i);
      order[stubs[i + 1]].push_back(i + 1);
    }
    for (auto& o : order) std::shuffle(o.begin(), o.end(), rng);
    std::vector<std::size_t> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    for (const auto& e : edges) parent[find(e.ends[0])] = find(e.ends[1]);
    bool connected = true;
    for (std::size_t v = 0; v < nv; ++v) connected = connected && find(v) == find(0);
    if (!connected) continue;
    std::vector<std::string> names;
    for (std::size_t v = 0; v < nv; ++v) names.push_back("v" + std::to_string(v));
    return RibbonGraph(std::move(names), std::move(edges), std::move(order));
  }
}

}  // namespace ribbon_gen
