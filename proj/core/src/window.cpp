#include "diffrakt/window.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "diffrakt/error.hpp"

namespace diffrakt {

namespace {

constexpr double kPi = std::numbers::pi;

std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::string_view context) {
  s = trim(s);
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw InvalidArgument("window: cannot parse number '" + std::string(s) + "' in '" +
                          std::string(context) + "'");
  return v;
}

std::pair<double, double> parse_range(std::string_view s, std::string_view context) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos)
    throw InvalidArgument("window: expected 'lo:hi' in '" + std::string(context) + "'");
  return {parse_number(s.substr(0, colon), context), parse_number(s.substr(colon + 1), context)};
}

void require_finite(std::initializer_list<double> values) {
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidArgument("window: coordinates must be finite");
}

}  // namespace

Window Window::interval(double a, double b) {
  require_finite({a, b});
  if (!(b > a)) throw InvalidArgument("window: interval must have positive length");
  return Window(Interval{a, b});
}

Window Window::rect(double ax, double bx, double ay, double by) {
  require_finite({ax, bx, ay, by});
  if (!(bx > ax) || !(by > ay)) throw InvalidArgument("window: rectangle must have positive area");
  return Window(Rect{ax, bx, ay, by});
}

Window Window::disk(double cx, double cy, double radius) {
  require_finite({cx, cy, radius});
  if (!(radius >= 0.0)) throw InvalidArgument("window: disk radius must be non-negative");
  return Window(Disk{Point(cx, cy), radius});
}

Window Window::parse(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.rfind("disk:", 0) == 0) {
    const std::string_view rest = t.substr(5);
    const auto at = rest.find('@');
    if (at == std::string_view::npos) return disk(0.0, 0.0, parse_number(rest, t));
    const std::string_view centre = rest.substr(at + 1);
    const auto comma = centre.find(',');
    if (comma == std::string_view::npos)
      throw InvalidArgument("window: expected 'disk:r@cx,cy' in '" + std::string(t) + "'");
    return disk(parse_number(centre.substr(0, comma), t), parse_number(centre.substr(comma + 1), t),
                parse_number(rest.substr(0, at), t));
  }
  const auto x = t.find('x');
  if (x != std::string_view::npos) {
    const auto [ax, bx] = parse_range(t.substr(0, x), t);
    const auto [ay, by] = parse_range(t.substr(x + 1), t);
    return rect(ax, bx, ay, by);
  }
  const auto [a, b] = parse_range(t, t);
  return interval(a, b);
}

int Window::dimension() const { return is_interval() ? 1 : 2; }

double Window::volume() const {
  if (const auto* i = std::get_if<Interval>(&shape_)) return i->b - i->a;
  if (const auto* r = std::get_if<Rect>(&shape_)) return (r->bx - r->ax) * (r->by - r->ay);
  const auto& d = std::get<Disk>(shape_);
  return kPi * d.radius * d.radius;
}

bool Window::contains(const Point& x) const {
  if (const auto* i = std::get_if<Interval>(&shape_)) return x[0] >= i->a && x[0] <= i->b;
  if (const auto* r = std::get_if<Rect>(&shape_))
    return x[0] >= r->ax && x[0] <= r->bx && x[1] >= r->ay && x[1] <= r->by;
  const auto& d = std::get<Disk>(shape_);
  return norm2(x - d.center) <= d.radius * d.radius;
}

double Window::inradius() const {
  if (const auto* i = std::get_if<Interval>(&shape_)) return 0.5 * (i->b - i->a);
  if (const auto* r = std::get_if<Rect>(&shape_)) return 0.5 * std::min(r->bx - r->ax, r->by - r->ay);
  return std::get<Disk>(shape_).radius;
}

double Window::diameter() const {
  if (const auto* i = std::get_if<Interval>(&shape_)) return i->b - i->a;
  if (const auto* r = std::get_if<Rect>(&shape_)) return std::hypot(r->bx - r->ax, r->by - r->ay);
  return 2.0 * std::get<Disk>(shape_).radius;
}

double Window::set_covariance(double r) const {
  r = std::abs(r);
  if (const auto* i = std::get_if<Interval>(&shape_)) return std::max(0.0, i->b - i->a - r);
  if (const auto* rc = std::get_if<Rect>(&shape_)) {
    const double lx = rc->bx - rc->ax;
    const double ly = rc->by - rc->ay;
    if (r > std::min(lx, ly))
      throw InvalidArgument("window: isotropic rectangle covariance needs r <= shorter side");
    return lx * ly - 2.0 * r / kPi * (lx + ly) + r * r / kPi;
  }
  const double radius = std::get<Disk>(shape_).radius;
  if (r >= 2.0 * radius) return 0.0;
  return 2.0 * radius * radius * std::acos(r / (2.0 * radius)) -
         0.5 * r * std::sqrt(4.0 * radius * radius - r * r);
}

std::string Window::describe() const {
  if (const auto* i = std::get_if<Interval>(&shape_)) return shortest(i->a) + ":" + shortest(i->b);
  if (const auto* r = std::get_if<Rect>(&shape_))
    return shortest(r->ax) + ":" + shortest(r->bx) + " x " + shortest(r->ay) + ":" + shortest(r->by);
  const auto& d = std::get<Disk>(shape_);
  std::string out = "disk:" + shortest(d.radius);
  if (d.center[0] != 0.0 || d.center[1] != 0.0)
    out += "@" + shortest(d.center[0]) + "," + shortest(d.center[1]);
  return out;
}

}  // namespace diffrakt
