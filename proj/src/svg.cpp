#include "flatlam/svg.hpp"

#include <sstream>

namespace flatlam {

namespace {

constexpr int kDigits = 12;

std::string num(const Rational& r) { return to_decimal(r, kDigits); }

class Canvas {
 public:
  explicit Canvas(const HalfTranslationSurface& s) {
    bool first = true;
    for (const auto& p : s.polygons())
      for (const auto& v : p.vertices) {
        if (first) {
          lo_ = hi_ = v;
          first = false;
        }
        lo_ = Vec2(std::min(lo_.x, v.x), std::min(lo_.y, v.y));
        hi_ = Vec2(std::max(hi_.x, v.x), std::max(hi_.y, v.y));
      }
    lo_ = Vec2(std::min<Rational>(lo_.x, 0), std::min<Rational>(lo_.y, 0));
    hi_ = Vec2(std::max<Rational>(hi_.x, 0), std::max<Rational>(hi_.y, 0));
    Rational margin = std::max<Rational>(hi_.x - lo_.x, hi_.y - lo_.y) / 20;
    if (margin == 0) margin = 1;
    lo_ = lo_ - Vec2(margin, margin);
    hi_ = hi_ + Vec2(margin, margin);
    stroke_ = margin / 4;
    body_ << "<g transform=\"scale(1,-1)\">\n";
    body_ << "<line class=\"axis\" x1=\"" << num(lo_.x) << "\" y1=\"0\" x2=\"" << num(hi_.x) << "\" y2=\"0\"/>\n";
    body_ << "<line class=\"axis\" x1=\"0\" y1=\"" << num(lo_.y) << "\" x2=\"0\" y2=\"" << num(hi_.y) << "\"/>\n";
  }

  void polygon(const std::vector<Vec2>& vs, const char* cls, const std::string& extra = "") {
    body_ << "<polygon class=\"" << cls << "\"" << extra << " points=\"";
    for (std::size_t i = 0; i < vs.size(); ++i) body_ << (i ? " " : "") << num(vs[i].x) << "," << num(vs[i].y);
    body_ << "\"/>\n";
  }

  void line(const Vec2& a, const Vec2& b, const char* cls) {
    body_ << "<line class=\"" << cls << "\" x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x)
          << "\" y2=\"" << num(b.y) << "\"/>\n";
  }

  void raw(const std::string& s) { body_ << s; }

  std::string finish() const {
    std::ostringstream out;
    Rational w = hi_.x - lo_.x, h = hi_.y - lo_.y;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(lo_.x) << " " << num(-hi_.y) << " " << num(w)
        << " " << num(h) << "\">\n";
    out << "<style>.axis{stroke:#bbb;stroke-width:" << num(stroke_ / 2)
        << "}.outline{fill:none;stroke:#000;stroke-width:" << num(stroke_ / 2)
        << "}.path{stroke:#c00;stroke-width:" << num(stroke_) << "}.band{stroke:none;fill-opacity:0.5}</style>\n";
    out << body_.str() << "</g>\n</svg>\n";
    return out.str();
  }

 private:
  Vec2 lo_, hi_;
  Rational stroke_ = 0;
  std::ostringstream body_;
};

void outlines(Canvas& c, const HalfTranslationSurface& s) {
  for (const auto& p : s.polygons()) c.polygon(p.vertices, "outline");
}

}  // namespace

std::string render_svg(const HalfTranslationSurface& s, const Trajectory& t) {
  Canvas c(s);
  outlines(c, s);
  for (const auto& seg : t.segments) c.line(seg.from, seg.to, "path");
  return c.finish();
}

std::string render_svg(const HalfTranslationSurface& s, const DirectionClassification& d) {
  static const char* colours[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#9c755f"};
  Canvas c(s);
  for (std::size_t k = 0; k < d.cylinders.size(); ++k) {
    std::string fill = std::string(" fill=\"") + colours[k % 8] + "\"";
    c.raw("<g class=\"cylinder\" id=\"cylinder-" + std::to_string(k) + "\">\n");
    for (const auto& r : d.cylinders[k].regions) c.polygon(r.vertices, "band", fill);
    c.raw("</g>\n");
  }
  outlines(c, s);
  return c.finish();
}

}  // namespace flatlam
