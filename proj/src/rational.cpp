#include "flatlam/rational.hpp"

#include <cctype>

namespace flatlam {

namespace {

bool valid_integer(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+')
    throw ParseError("malformed rational '" + std::string(text) + "'");
  Integer d = parse_integer(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(parse_integer(num), d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string to_decimal(const Rational& r, int digits) {
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Rational scaled = abs(r) * scale + Rational(1, 2);
  Integer q = scaled.get_num() / scaled.get_den();
  std::string s = q.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
  if (digits > 0) s.insert(s.size() - static_cast<std::size_t>(digits), 1, '.');
  if (sgn(r) < 0 && q != 0) s.insert(0, 1, '-');
  return s;
}

Vec2 primitive(const Vec2& v) {
  if (v.is_zero()) throw std::invalid_argument("primitive of zero vector");
  Integer l;
  mpz_lcm(l.get_mpz_t(), v.x.get_den_mpz_t(), v.y.get_den_mpz_t());
  Integer a = v.x.get_num() * (l / v.x.get_den());
  Integer b = v.y.get_num() * (l / v.y.get_den());
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return {Rational(a / g), Rational(b / g)};
}

std::string to_string(const Vec2& v) { return "(" + to_string(v.x) + "," + to_string(v.y) + ")"; }

std::ostream& operator<<(std::ostream& os, const Vec2& v) { return os << to_string(v); }

Direction::Direction(const Vec2& v) : v_(primitive(v)) {
  if (sgn(v_.x) < 0 || (sgn(v_.x) == 0 && sgn(v_.y) < 0)) v_ = -v_;
}

int half_of(const Vec2& ref, const Vec2& v) {
  int c = sgn(cross(ref, v));
  if (c > 0) return 0;
  if (c < 0) return 1;
  return sgn(dot(ref, v)) > 0 ? 0 : 1;
}

int compare_ccw(const Vec2& ref, const Vec2& a, const Vec2& b) {
  int ha = half_of(ref, a), hb = half_of(ref, b);
  if (ha != hb) return ha < hb ? -1 : 1;
  // Same half: both in [0, pi) or both in [pi, 2pi); cross decides.
  int c = sgn(cross(a, b));
  if (c == 0) {
    // Parallel inside one half means the same ray, except the half boundary
    // where ref and -ref sit in different halves already.
    return 0;
  }
  return c > 0 ? -1 : 1;
}

bool in_arc_open_closed(const Vec2& a, const Vec2& b, const Vec2& x) {
  if (same_ray(a, x)) return same_ray(a, b);
  if (same_ray(a, b)) return true;
  return compare_ccw(a, x, b) <= 0;
}

bool in_arc_closed(const Vec2& a, const Vec2& b, const Vec2& x) {
  if (same_ray(a, x)) return true;
  return compare_ccw(a, x, b) <= 0;
}

int line_hits(const Vec2& axis, const Vec2& a, const Vec2& b) {
  int n = 0;
  if (in_arc_open_closed(a, b, axis)) ++n;
  if (in_arc_open_closed(a, b, -axis)) ++n;
  return n;
}

}  // namespace flatlam
