#include "flatlam/saddle.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <thread>

#include "flatlam/triangulate.hpp"

namespace flatlam {

namespace {

struct Frame {
  int sigma = 1;  // developed point = sigma * z + tau
  Vec2 tau;
  Vec2 apply(const Vec2& z) const { return sigma * z + tau; }
};

// Squared distance from the origin to the part of segment [p, q] inside the
// closed cone spanned by lo, hi (less than a half-turn wide). Empty part:
// nullopt.
std::optional<Rational> clipped_distance2(const Vec2& p, const Vec2& q, const Vec2& lo, const Vec2& hi) {
  Vec2 e = q - p;
  Rational t0 = 0, t1 = 1;
  // Each constraint reads c0 + t * c1 >= 0.
  auto clip = [&](const Rational& c0, const Rational& c1) {
    if (sgn(c1) == 0) {
      if (sgn(c0) < 0) t1 = -1;
      return;
    }
    Rational t = -c0 / c1;
    if (sgn(c1) > 0) t0 = std::max(t0, t);
    else t1 = std::min(t1, t);
  };
  clip(cross(lo, p), cross(lo, e));
  clip(cross(p, hi), cross(e, hi));
  if (t0 > t1) return std::nullopt;
  Vec2 a = p + t0 * e;
  Vec2 ab = (t1 - t0) * e;
  Rational len = norm2(ab);
  if (sgn(len) == 0) return norm2(a);
  Rational u = -dot(a, ab) / len;
  if (u < 0) u = 0;
  if (u > 1) u = 1;
  return norm2(a + u * ab);
}

struct Candidate {
  Germ germ;
  Vec2 dir;
};

class Unfolder {
 public:
  Unfolder(const HalfTranslationSurface& s, const Rational& L) : s_(s), tri_(s.triangulation()), L_(L) {}

  std::vector<Candidate> from_corner(CornerRef c) {
    out_.clear();
    origin_corner_ = c;
    const Polygon& P = s_.polygon(c.polygon);
    Frame f{1, -P.vertex(c.vertex)};
    for (std::size_t t : tri_.by_polygon[c.polygon]) {
      const Triangle& T = tri_.triangles[t];
      for (int j = 0; j < 3; ++j) {
        if (T.v[j] != c.vertex) continue;
        Vec2 a = f.apply(P.vertex(T.v[(j + 1) % 3]));
        Vec2 b = f.apply(P.vertex(T.v[(j + 2) % 3]));
        offer(a);
        offer(b);
        cross_edge(t, (j + 1) % 3, f, a, b);
      }
    }
    return out_;
  }

 private:
  void offer(const Vec2& v) {
    if (norm2(v) > L_) return;
    out_.push_back(Candidate{s_.make_germ(origin_corner_, primitive(v)), v});
  }

  // Leave triangle t through edge k inside the open window (lo, hi).
  void cross_edge(std::size_t t, int k, const Frame& f, const Vec2& lo, const Vec2& hi) {
    const Triangle& T = tri_.triangles[t];
    const auto& link = T.link[k];
    if (!link) return;
    const Polygon& P = s_.polygon(T.polygon);
    Vec2 p = f.apply(P.vertex(T.v[k]));
    Vec2 q = f.apply(P.vertex(T.v[(k + 1) % 3]));
    auto d2 = clipped_distance2(p, q, lo, hi);
    if (!d2 || *d2 > L_) return;
    Frame g{f.sigma * link->eps, f.tau - (f.sigma * link->eps) * link->offset};
    std::size_t nt = link->tri;
    int ne = link->edge;
    const Triangle& N = tri_.triangles[nt];
    const Polygon& Q = s_.polygon(N.polygon);
    Vec2 c = g.apply(Q.vertex(N.v[(ne + 2) % 3]));
    Vec2 a = g.apply(Q.vertex(N.v[ne]));
    Vec2 b = g.apply(Q.vertex(N.v[(ne + 1) % 3]));
    if (sgn(cross(lo, c)) > 0 && sgn(cross(c, hi)) > 0) offer(c);
    // Exit edges ne+1 (b -> c) and ne+2 (c -> a).
    descend(nt, (ne + 1) % 3, g, b, c, lo, hi);
    descend(nt, (ne + 2) % 3, g, c, a, lo, hi);
  }

  void descend(std::size_t t, int k, const Frame& f, const Vec2& e0, const Vec2& e1, const Vec2& lo, const Vec2& hi) {
    Vec2 p1 = e0, p2 = e1;
    int o = sgn(cross(p1, p2));
    if (o == 0) return;
    if (o < 0) std::swap(p1, p2);
    const Vec2& nlo = sgn(cross(lo, p1)) > 0 ? p1 : lo;
    const Vec2& nhi = sgn(cross(p2, hi)) > 0 ? p2 : hi;
    if (sgn(cross(nlo, nhi)) <= 0) return;
    cross_edge(t, k, f, nlo, nhi);
  }

  const HalfTranslationSurface& s_;
  const Triangulation& tri_;
  Rational L_;
  CornerRef origin_corner_;
  std::vector<Candidate> out_;
};

Rational scale_between(const Vec2& v, const Vec2& unit) {
  return norm2(v) / abs(dot(v, unit));
}

struct Key {
  Germ germ;
  Vec2 hol;
  friend bool operator<(const Key& a, const Key& b) {
    if (!(a.germ == b.germ)) return a.germ < b.germ;
    return a.hol < b.hol;
  }
};

}  // namespace

Vec2 reverse_holonomy(const HalfTranslationSurface&, const SaddleConnection& c) {
  return scale_between(c.holonomy, c.to.dir) * c.to.dir;
}

SaddleConnection canonical_connection(const HalfTranslationSurface& s, const Trajectory& t) {
  if (t.termination != Termination::HitSingularity || !t.start_germ || !t.end_germ)
    throw std::invalid_argument("trajectory is not a saddle connection");
  SaddleConnection sc{*t.start_germ, *t.end_germ, t.holonomy(), t.itinerary, t.sq_length()};
  Key fwd{sc.from, sc.holonomy};
  Key rev{sc.to, reverse_holonomy(s, sc)};
  if (!(rev < fwd)) return sc;
  Trajectory r = shoot(s, sc.to, t.sq_length());
  return SaddleConnection{sc.to, *r.end_germ, r.holonomy(), r.itinerary, r.sq_length()};
}

std::vector<SaddleConnection> saddle_connections(const HalfTranslationSurface& s, const Rational& max_sq_length,
                                                 unsigned jobs) {
  std::vector<CornerRef> starts;
  for (const auto& cp : s.vertex_classes())
    if (cp.singular())
      for (const auto& k : cp.corners) starts.push_back(k.ref);

  std::vector<std::map<Key, SaddleConnection>> found(starts.size());
  auto work = [&](std::size_t i) {
    Unfolder u(s, max_sq_length);
    auto& bucket = found[i];
    std::set<Germ> shot;
    for (const auto& cand : u.from_corner(starts[i])) {
      const Germ& g = cand.germ;
      if (!shot.insert(g).second) continue;
      Trajectory t = shoot(s, g, max_sq_length);
      if (t.termination != Termination::HitSingularity) continue;
      SaddleConnection sc = canonical_connection(s, t);
      Key k{sc.from, sc.holonomy};
      bucket.emplace(k, std::move(sc));
    }
  };

  jobs = std::max(1u, jobs);
  if (jobs == 1 || starts.size() < 2) {
    for (std::size_t i = 0; i < starts.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < std::min<std::size_t>(jobs, starts.size()); ++j)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < starts.size();) work(i);
      });
    for (auto& th : pool) th.join();
  }

  std::map<Key, SaddleConnection> merged;
  for (auto& b : found)
    for (auto& [k, v] : b) merged.emplace(k, std::move(v));
  std::vector<SaddleConnection> out;
  for (auto& [k, v] : merged) out.push_back(std::move(v));
  std::stable_sort(out.begin(), out.end(), [](const SaddleConnection& a, const SaddleConnection& b) {
    if (a.sq_length != b.sq_length) return a.sq_length < b.sq_length;
    if (a.itinerary != b.itinerary) return a.itinerary < b.itinerary;
    if (!(a.from == b.from)) return a.from < b.from;
    return a.holonomy < b.holonomy;
  });
  return out;
}

}  // namespace flatlam
