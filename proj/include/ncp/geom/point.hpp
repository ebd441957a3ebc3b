#pragma once

#include <cmath>

namespace ncp::geom {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  Point2() = default;
  Point2(double px, double py) : x(px), y(py) {}

  Point2 operator+(const Point2& o) const { return {x + o.x, y + o.y}; }
  Point2 operator-(const Point2& o) const { return {x - o.x, y - o.y}; }
  Point2 operator*(double k) const { return {x * k, y * k}; }
  Point2 operator/(double k) const { return {x / k, y / k}; }
  Point2& operator+=(const Point2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Point2& operator-=(const Point2& o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  bool operator==(const Point2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Point2& o) const { return !(*this == o); }
};

inline double dot(const Point2& a, const Point2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Point2& a, const Point2& b) { return a.x * b.y - a.y * b.x; }
inline double norm2(const Point2& a) { return a.x * a.x + a.y * a.y; }
inline double norm(const Point2& a) { return std::sqrt(norm2(a)); }
inline double dist(const Point2& a, const Point2& b) { return norm(a - b); }
inline double dist2(const Point2& a, const Point2& b) { return norm2(a - b); }

// Zero vector maps to zero, callers rely on that for degenerate forces.
inline Point2 normalized(const Point2& a) {
  double n = norm(a);
  if (n == 0.0) return {0.0, 0.0};
  return a / n;
}

// CCW rotation by 90 degrees.
inline Point2 perp(const Point2& a) { return {-a.y, a.x}; }

struct Circle {
  Point2 center;
  double r = 0.0;

  Circle() = default;
  Circle(Point2 c, double radius) : center(c), r(radius) {}
  Circle(double x, double y, double radius) : center(x, y), r(radius) {}

  double area() const { return 3.14159265358979323846 * r * r; }
  // Power distance of q to this circle: |q-c|^2 - r^2.
  double power(const Point2& q) const { return dist2(q, center) - r * r; }
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

}  // namespace ncp::geom
