#pragma once

#include <array>
#include <cmath>

namespace diffrakt {

// A point (or wave vector) in R^d for d <= 3; unused trailing coordinates are
// zero so norms and differences never need the dimension.
struct Point {
  std::array<double, 3> c{0.0, 0.0, 0.0};

  constexpr Point() = default;
  constexpr explicit Point(double x, double y = 0.0, double z = 0.0) : c{x, y, z} {}

  constexpr double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }
  constexpr double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }

  friend constexpr Point operator-(const Point& a, const Point& b) {
    return Point(a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2]);
  }
  friend constexpr Point operator+(const Point& a, const Point& b) {
    return Point(a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]);
  }
  friend constexpr Point operator*(double s, const Point& a) {
    return Point(s * a.c[0], s * a.c[1], s * a.c[2]);
  }
  friend constexpr bool operator==(const Point&, const Point&) = default;
};

inline double norm2(const Point& p) { return p.c[0] * p.c[0] + p.c[1] * p.c[1] + p.c[2] * p.c[2]; }
inline double norm(const Point& p) { return std::sqrt(norm2(p)); }
inline double dot(const Point& a, const Point& b) {
  return a.c[0] * b.c[0] + a.c[1] * b.c[1] + a.c[2] * b.c[2];
}

}  // namespace diffrakt
