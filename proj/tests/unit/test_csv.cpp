#include <sstream>

#include <gtest/gtest.h>

#include "diffrakt/csv.hpp"
#include "diffrakt/samplers.hpp"

using namespace diffrakt;

TEST(PointsCsv, HeaderAndRows) {
  PointConfiguration c;
  c.dimension = 2;
  c.window = Window::disk(0.0, 0.0, 2.0);
  c.points = {Point(0.1, -0.2), Point(1.0 / 3.0, 0.5)};
  c.seed = 17;
  c.process_label = "gaf";
  std::ostringstream os;
  write_points_csv(os, c);
  EXPECT_EQ(os.str(),
            "# process=gaf seed=17 window=disk:2\n"
            "0.10000000000000001,-0.20000000000000001\n"
            "0.33333333333333331,0.5\n");
}

TEST(PointsCsv, RoundTripIsExact) {
  const PointConfiguration c = sample_poisson(Window::rect(0.0, 3.0, -1.0, 2.0), 5.0, 99);
  std::stringstream ss;
  write_points_csv(ss, c);
  const PointConfiguration back = read_points_csv(ss);
  EXPECT_EQ(back.dimension, 2);
  EXPECT_EQ(back.seed, c.seed);
  EXPECT_EQ(back.window, c.window);
  EXPECT_EQ(back.process_label, c.process_label);
  ASSERT_EQ(back.points.size(), c.points.size());
  for (std::size_t i = 0; i < c.points.size(); ++i) EXPECT_EQ(back.points[i], c.points[i]);
}

TEST(PointsCsv, EmptyConfiguration) {
  PointConfiguration c;
  c.window = Window::interval(0.0, 0.01);
  c.process_label = "poisson(d=1)";
  std::stringstream ss;
  write_points_csv(ss, c);
  EXPECT_TRUE(read_points_csv(ss).points.empty());
}

TEST(PointsCsv, RejectsMalformedInput) {
  std::istringstream bad("x,y\n1,2\n");
  EXPECT_ANY_THROW(read_points_csv(bad));
}
