#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "diffrakt/point.hpp"

namespace diffrakt {

struct Interval {
  double a = 0.0;
  double b = 1.0;
};

struct Rect {
  double ax = 0.0, bx = 1.0;
  double ay = 0.0, by = 1.0;
};

struct Disk {
  Point center;
  double radius = 1.0;
};

// Observation window. Intervals and rectangles must have positive volume; a
// disk may have radius 0 (the empty window) so that samplers can return an
// empty configuration.
class Window {
 public:
  using Shape = std::variant<Interval, Rect, Disk>;

  static Window interval(double a, double b);
  static Window rect(double ax, double bx, double ay, double by);
  static Window disk(double cx, double cy, double radius);
  // "a:b", "ax:bx x ay:by" or "disk:r" (disk centred at the origin).
  static Window parse(std::string_view text);

  const Shape& shape() const { return shape_; }
  int dimension() const;
  double volume() const;
  bool contains(const Point& x) const;
  // Radius of the largest ball inside the window.
  double inradius() const;
  double diameter() const;
  // Isotropised set covariance: the mean of |W cap (W + h)| over |h| = r.
  double set_covariance(double r) const;
  std::string describe() const;

  bool is_interval() const { return std::holds_alternative<Interval>(shape_); }
  bool is_rect() const { return std::holds_alternative<Rect>(shape_); }
  bool is_disk() const { return std::holds_alternative<Disk>(shape_); }

  friend bool operator==(const Window& a, const Window& b) { return a.describe() == b.describe(); }

 private:
  explicit Window(Shape s) : shape_(s) {}
  Shape shape_;
};

}  // namespace diffrakt
