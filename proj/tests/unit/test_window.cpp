#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "diffrakt/error.hpp"
#include "diffrakt/window.hpp"

using namespace diffrakt;
using std::numbers::pi;

TEST(Window, ParseForms) {
  const Window iv = Window::parse("0:500");
  EXPECT_TRUE(iv.is_interval());
  EXPECT_EQ(iv.volume(), 500.0);
  const Window r = Window::parse("0:2 x -1:3");
  EXPECT_TRUE(r.is_rect());
  EXPECT_EQ(r.volume(), 8.0);
  EXPECT_EQ(r.dimension(), 2);
  const Window d = Window::parse("disk:12");
  EXPECT_TRUE(d.is_disk());
  EXPECT_NEAR(d.volume(), 144.0 * pi, 1e-12);
  const Window dc = Window::parse("disk:1@2,3");
  EXPECT_TRUE(dc.contains(Point(2.5, 3.0)));
  EXPECT_FALSE(dc.contains(Point(0.0, 0.0)));
}

TEST(Window, DescribeRoundTrips) {
  for (const char* text : {"0:500", "0.25:1.5", "0:2 x -1:3", "disk:12", "disk:1.5@2,-3"}) {
    const Window w = Window::parse(text);
    EXPECT_EQ(Window::parse(w.describe()), w) << text;
  }
}

TEST(Window, RejectsDegenerate) {
  EXPECT_THROW(Window::interval(0.0, 0.0), InvalidArgument);
  EXPECT_THROW(Window::rect(0.0, 1.0, 2.0, 2.0), InvalidArgument);
  EXPECT_THROW(Window::disk(0.0, 0.0, -1.0), InvalidArgument);
  EXPECT_THROW(Window::parse("0-1"), InvalidArgument);
  EXPECT_THROW(Window::parse("disk:abc"), InvalidArgument);
  EXPECT_THROW(Window::interval(0.0, INFINITY), InvalidArgument);
}

TEST(Window, ZeroRadiusDiskIsEmpty) {
  const Window w = Window::disk(0.0, 0.0, 0.0);
  EXPECT_EQ(w.volume(), 0.0);
}

TEST(Window, Geometry) {
  const Window iv = Window::interval(-1.0, 3.0);
  EXPECT_EQ(iv.inradius(), 2.0);
  EXPECT_EQ(iv.diameter(), 4.0);
  const Window r = Window::rect(0.0, 4.0, 0.0, 2.0);
  EXPECT_EQ(r.inradius(), 1.0);
  EXPECT_NEAR(r.diameter(), std::sqrt(20.0), 1e-14);
  const Window d = Window::disk(0.0, 0.0, 3.0);
  EXPECT_EQ(d.inradius(), 3.0);
  EXPECT_EQ(d.diameter(), 6.0);
}

TEST(Window, SetCovariance) {
  const Window iv = Window::interval(0.0, 10.0);
  EXPECT_NEAR(iv.set_covariance(0.0), 10.0, 1e-14);
  EXPECT_NEAR(iv.set_covariance(2.5), 7.5, 1e-14);
  // Isotropised over directions: |W cap (W + h)| = (a - |h_x|)(b - |h_y|).
  const Window r = Window::rect(0.0, 4.0, 0.0, 2.0);
  const double rr = 1.0;
  const double expected = 4.0 * 2.0 - 2.0 * rr * (4.0 + 2.0) / pi + rr * rr / pi;
  EXPECT_NEAR(r.set_covariance(rr), expected, 1e-12);
  const Window d = Window::disk(0.0, 0.0, 1.0);
  const double lens = 2.0 * std::acos(0.5) - 0.5 * std::sqrt(3.0);
  EXPECT_NEAR(d.set_covariance(1.0), lens, 1e-12);
  EXPECT_NEAR(d.set_covariance(0.0), pi, 1e-12);
}
