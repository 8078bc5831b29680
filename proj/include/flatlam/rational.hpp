#pragma once
// Exact arithmetic substrate: GMP rationals, plane vectors and canonical
// line directions.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace flatlam {

using Integer = mpz_class;
/// Always kept in lowest terms with a positive denominator.
using Rational = mpq_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses "p/q" or "p" (optionally signed). Throws ParseError.
Rational parse_rational(std::string_view text);
/// Serializes as "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);
/// Fixed-point decimal rendering, rounded half away from zero, locale independent.
std::string to_decimal(const Rational& r, int digits);

inline int sign(const Rational& r) { return sgn(r); }

struct Vec2 {
  Rational x;
  Rational y;

  Vec2() = default;
  Vec2(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
  Vec2(long x_, long y_) : x(x_), y(y_) {}

  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
  friend Vec2 operator*(const Rational& s, const Vec2& a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(int s, const Vec2& a) { return {Rational(s) * a.x, Rational(s) * a.y}; }
  friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Vec2& a, const Vec2& b) { return !(a == b); }
  friend bool operator<(const Vec2& a, const Vec2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }

  bool is_zero() const { return sgn(x) == 0 && sgn(y) == 0; }
};

inline Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Rational dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline Rational norm2(const Vec2& a) { return dot(a, a); }

/// True iff a and b are positive multiples of each other.
inline bool same_ray(const Vec2& a, const Vec2& b) {
  return sgn(cross(a, b)) == 0 && sgn(dot(a, b)) > 0;
}
inline bool parallel(const Vec2& a, const Vec2& b) { return sgn(cross(a, b)) == 0; }

/// Positive rescaling of v to a primitive integer vector (sign kept).
Vec2 primitive(const Vec2& v);

std::string to_string(const Vec2& v);
std::ostream& operator<<(std::ostream& os, const Vec2& v);

/// A line direction: primitive integer vector with first nonzero coordinate
/// positive, so v and -v share one representative.
class Direction {
 public:
  explicit Direction(const Vec2& v);
  const Vec2& vec() const { return v_; }
  friend bool operator==(const Direction& a, const Direction& b) { return a.v_ == b.v_; }
  friend bool operator<(const Direction& a, const Direction& b) { return a.v_ < b.v_; }

 private:
  Vec2 v_;
};

// Angular predicates. All angles are measured counterclockwise in [0, 2pi).

/// 0 if the angle from `ref` to `v` lies in [0, pi), 1 otherwise.
int half_of(const Vec2& ref, const Vec2& v);
/// Three-way comparison of the ccw angles ref->a and ref->b.
int compare_ccw(const Vec2& ref, const Vec2& a, const Vec2& b);
/// True iff x lies in the ccw arc (a, b] (a full turn when a and b share a ray).
bool in_arc_open_closed(const Vec2& a, const Vec2& b, const Vec2& x);
/// True iff x lies in the closed ccw arc [a, b] (a != b as rays).
bool in_arc_closed(const Vec2& a, const Vec2& b, const Vec2& x);
/// Number of times a ray rotating ccw from a to b meets the line spanned by
/// `axis` (a excluded, b included).
int line_hits(const Vec2& axis, const Vec2& a, const Vec2& b);

}  // namespace flatlam
