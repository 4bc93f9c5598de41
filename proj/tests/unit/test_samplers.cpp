#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "diffrakt/error.hpp"
#include "diffrakt/samplers.hpp"

using namespace diffrakt;
using std::numbers::pi;

namespace {

double mean_count(const std::vector<PointConfiguration>& v) {
  double s = 0.0;
  for (const auto& c : v) s += static_cast<double>(c.size());
  return s / static_cast<double>(v.size());
}

bool all_inside(const PointConfiguration& c) {
  return std::all_of(c.points.begin(), c.points.end(), [&](const Point& x) { return c.window.contains(x); });
}

double mean_nn_distance(const PointConfiguration& c) {
  std::vector<double> x;
  for (const Point& p : c.points) x.push_back(p[0]);
  std::sort(x.begin(), x.end());
  if (x.size() < 2) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double d = 1e300;
    if (i > 0) d = std::min(d, x[i] - x[i - 1]);
    if (i + 1 < x.size()) d = std::min(d, x[i + 1] - x[i]);
    s += d;
  }
  return s / static_cast<double>(x.size());
}

}  // namespace

TEST(Seeding, DeterministicAndDistinct) {
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
  std::set<std::uint64_t> seen;
  for (std::uint64_t b : {0ull, 1ull, 42ull})
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(b, i));
  EXPECT_EQ(seen.size(), 3000u);
  Rng a = make_rng(5), b = make_rng(5);
  EXPECT_EQ(a(), b());
}

TEST(Poisson, MeanCountAndBounds) {
  std::vector<PointConfiguration> v;
  for (std::uint64_t s = 0; s < 4000; ++s) v.push_back(sample_poisson(Window::rect(0, 1, 0, 1), 1.0, s));
  EXPECT_NEAR(mean_count(v), 1.0, 0.05);
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const auto c = sample_poisson(Window::rect(0, 1, 0, 1), 100.0, s);
    EXPECT_GE(c.size(), 50u);
    EXPECT_LE(c.size(), 160u);
    ASSERT_TRUE(all_inside(c));
  }
}

TEST(Poisson, RejectsBadInput) {
  EXPECT_THROW(sample_poisson(Window::interval(0, 1), 0.0, 1), InvalidArgument);
  EXPECT_THROW(sample_poisson(Window::disk(0, 0, 0), 1.0, 1), InvalidArgument);
  EXPECT_THROW(sample_poisson(Window::interval(0, 1e9), 1.0, 1), InvalidArgument);
}

TEST(SpectralDpp, SineMeanCountAndDeterminism) {
  const SpectralDppPlan plan(KernelSpec::sine(), Window::interval(0, 50), 2048);
  EXPECT_LT(plan.clamp_residue(), 1e-8);
  EXPECT_NEAR(plan.expected_count(), 50.0, 0.5);
  std::vector<PointConfiguration> v;
  for (std::uint64_t s = 0; s < 100; ++s) v.push_back(plan.sample(derive_seed(1, s)));
  EXPECT_NEAR(mean_count(v), 50.0, 2.0);
  for (const auto& c : v) {
    ASSERT_TRUE(all_inside(c));
    ASSERT_TRUE(is_simple(c));
  }
  const auto again = plan.sample(derive_seed(1, 3));
  EXPECT_EQ(again.points, v[3].points);
  EXPECT_EQ(sample_dpp_spectral(KernelSpec::sine(), Window::interval(0, 50), 2048, derive_seed(1, 3)).points,
            v[3].points);
}

TEST(SpectralDpp, ThinningWeakensRepulsion) {
  const SpectralDppPlan full(KernelSpec::sine(), Window::interval(0, 50), 1024);
  const SpectralDppPlan thin(KernelSpec::sine(0.25), Window::interval(0, 50), 1024);
  double nn_full = 0.0, nn_thin = 0.0;
  for (std::uint64_t s = 0; s < 60; ++s) {
    nn_full += mean_nn_distance(full.sample(s));
    nn_thin += mean_nn_distance(thin.sample(s));
  }
  EXPECT_LT(nn_thin, nn_full);
}

TEST(SpectralDpp, TinyWindowIsUsuallyEmpty) {
  const SpectralDppPlan plan(KernelSpec::sine(), Window::interval(0, 0.01), 16);
  int empty = 0;
  for (std::uint64_t s = 0; s < 200; ++s) empty += plan.sample(s).size() == 0 ? 1 : 0;
  EXPECT_GE(empty, 190);
}

TEST(SpectralDpp, PlanarGaussMeanCount) {
  const SpectralDppPlan plan(KernelSpec::gauss(2), Window::rect(0, 10, 0, 10), 40);
  std::vector<PointConfiguration> v;
  for (std::uint64_t s = 0; s < 20; ++s) v.push_back(plan.sample(s));
  EXPECT_NEAR(mean_count(v), 100.0, 3.0);
  EXPECT_EQ(v[0].dimension, 2);
}

TEST(SpectralDpp, Preconditions) {
  EXPECT_THROW(SpectralDppPlan(KernelSpec::compound_poisson_a(), Window::interval(0, 10), 64), InvalidArgument);
  EXPECT_THROW(SpectralDppPlan(KernelSpec::ginibre(), Window::disk(0, 0, 3), 64), InvalidArgument);
  EXPECT_THROW(SpectralDppPlan(KernelSpec::sine(), Window::disk(0, 0, 3), 64), InvalidArgument);
  EXPECT_THROW(SpectralDppPlan(KernelSpec::gauss(2), Window::rect(0, 5, 0, 5), 65), InvalidArgument);
  EXPECT_THROW(SpectralDppPlan(KernelSpec::exponential(0.6), Window::interval(0, 10), 64), InvalidArgument);
  EXPECT_THROW(SpectralDppPlan(KernelSpec::ball(3), Window::interval(0, 10), 8), InvalidArgument);
}

TEST(Ginibre, MeanCountOnRadiusTen) {
  GinibreOptions opts;
  opts.engine = GinibreEngine::kMatrixModel;
  std::vector<PointConfiguration> v;
  for (std::uint64_t s = 0; s < 30; ++s) v.push_back(sample_ginibre(Window::disk(0, 0, 10), derive_seed(2, s), opts));
  EXPECT_NEAR(mean_count(v), 100.0 * pi, 3.0);
  for (const auto& c : v) ASSERT_TRUE(all_inside(c));
}

TEST(Ginibre, EnginesAgreeOnSmallDisk) {
  GinibreOptions matrix, disk;
  matrix.engine = GinibreEngine::kMatrixModel;
  disk.engine = GinibreEngine::kDiskProjection;
  matrix.matrix_size = disk.matrix_size = 200;
  const Window w = Window::disk(0, 0, 4);
  std::vector<PointConfiguration> a, b;
  for (std::uint64_t s = 0; s < 200; ++s) {
    a.push_back(sample_ginibre(w, s, matrix));
    b.push_back(sample_ginibre(w, s, disk));
  }
  EXPECT_NEAR(mean_count(a), 16.0 * pi, 1.0);
  EXPECT_NEAR(mean_count(b), 16.0 * pi, 1.0);
  // Pairs closer than 0.3: about 1 for Ginibre, about 7 for Poisson.
  auto close_pairs = [](const std::vector<PointConfiguration>& v) {
    double n = 0.0;
    for (const auto& c : v)
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) n += norm(c.points[i] - c.points[j]) < 0.3 ? 1.0 : 0.0;
    return n / static_cast<double>(v.size());
  };
  EXPECT_LT(close_pairs(a), 2.0);
  EXPECT_LT(close_pairs(b), 2.0);
  EXPECT_NEAR(close_pairs(a), close_pairs(b), 0.5);
}

TEST(Ginibre, EdgeCases) {
  EXPECT_TRUE(sample_ginibre(Window::disk(0, 0, 0), 1).points.empty());
  EXPECT_THROW(sample_ginibre(Window::disk(0, 0, 30), 1), InvalidArgument);
  GinibreOptions small;
  small.matrix_size = 50;
  EXPECT_THROW(sample_ginibre(Window::disk(0, 0, 5), 1, small), InvalidArgument);
  EXPECT_THROW(sample_ginibre(Window::disk(1, 0, 2), 1), InvalidArgument);
  EXPECT_THROW(sample_ginibre(Window::rect(0, 1, 0, 1), 1), InvalidArgument);
  EXPECT_EQ(ginibre_matrix_size(10.0), static_cast<int>(std::ceil(pi * std::pow(10.0 / 0.7, 2))));
}

TEST(Renewal, GammaIncrementsAtHalf) {
  Rng rng = make_rng(11);
  double s = 0.0, s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = sample_renewal_increment(0.5, rng);
    s += x;
    s2 += x * x;
  }
  const double mean = s / n;
  EXPECT_NEAR(mean, 1.0, 0.01);
  EXPECT_NEAR(s2 / n - mean * mean, 0.5, 0.01);
  EXPECT_NEAR(renewal_increment_cdf(0.5, 1.0), 1.0 - 3.0 * std::exp(-2.0), 1e-14);
}

TEST(Renewal, KolmogorovSmirnov) {
  for (double alpha : {0.125, 0.25}) {
    Rng rng = make_rng(derive_seed(4, static_cast<std::uint64_t>(alpha * 1000)));
    std::vector<double> x(100000);
    for (double& v : x) v = sample_renewal_increment(alpha, rng);
    std::sort(x.begin(), x.end());
    double ks = 0.0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double f = renewal_increment_cdf(alpha, x[i]);
      ks = std::max({ks, std::abs(f - i / n), std::abs(f - (i + 1) / n)});
    }
    EXPECT_LE(ks, 0.02) << "alpha=" << alpha;
  }
}

TEST(Renewal, CdfLimits) {
  for (double alpha : {0.05, 0.25, 0.5}) {
    EXPECT_EQ(renewal_increment_cdf(alpha, 0.0), 0.0);
    EXPECT_NEAR(renewal_increment_cdf(alpha, 200.0), 1.0, 1e-12);
    EXPECT_NEAR(renewal_increment_cdf(alpha, 1e-9), 0.0, 1e-15);
  }
  Rng rng = make_rng(1);
  EXPECT_THROW(sample_renewal_increment(0.6, rng), InvalidArgument);
  EXPECT_THROW(sample_renewal_dpp(0.0, Window::interval(0, 1), 1), InvalidArgument);
  EXPECT_THROW(sample_renewal_dpp(0.25, Window::rect(0, 1, 0, 1), 1), InvalidArgument);
}

TEST(Permanental, GaussMeanCountAndDiagnostics) {
  std::vector<PointConfiguration> v;
  PermanentalDiagnostics diag;
  for (std::uint64_t s = 0; s < 50; ++s)
    v.push_back(sample_permanental(KernelSpec::gauss(1), Window::interval(0, 200), 8192, s, &diag));
  EXPECT_GE(diag.captured_mass, 1.0 - 1e-6);
  EXPECT_NEAR(diag.field_variance, 1.0, 1e-6);
  EXPECT_NEAR(mean_count(v), 200.0, 10.0);
  for (const auto& c : v) ASSERT_TRUE(all_inside(c));
}

TEST(Permanental, PlanarWindow) {
  std::vector<PointConfiguration> v;
  for (std::uint64_t s = 0; s < 20; ++s)
    v.push_back(sample_permanental(KernelSpec::gauss(2), Window::rect(0, 20, 0, 20), 256, s));
  EXPECT_NEAR(mean_count(v), 400.0, 40.0);
}

TEST(Permanental, CoarseGridIsATruncationError) {
  EXPECT_THROW(sample_permanental(KernelSpec::gauss(1), Window::interval(0, 200), 16, 1), TruncationError);
  EXPECT_THROW(sample_permanental(KernelSpec::ginibre(), Window::disk(0, 0, 2), 64, 1), InvalidArgument);
  EXPECT_THROW(sample_permanental(KernelSpec::gauss(1), Window::interval(0, 10), 1, 1), InvalidArgument);
}

TEST(CoxCosine, MeanCount) {
  std::vector<PointConfiguration> v;
  for (std::uint64_t s = 0; s < 400; ++s) v.push_back(sample_cox_cosine(Window::interval(0, 100), s));
  EXPECT_NEAR(mean_count(v), 100.0, 2.0);
  EXPECT_THROW(sample_cox_cosine(Window::rect(0, 1, 0, 1), 1), InvalidArgument);
}

TEST(GafZeros, MeanCount) {
  std::vector<PointConfiguration> v;
  for (std::uint64_t s = 0; s < 60; ++s) v.push_back(sample_gaf_zeros(Window::disk(0, 0, 5), 160, derive_seed(9, s)));
  EXPECT_NEAR(mean_count(v), 25.0 * pi, 3.0);
  for (const auto& c : v) ASSERT_TRUE(all_inside(c));
}

TEST(GafZeros, ForcedZeroAtOrigin) {
  GafZeroOptions opts;
  opts.force_zero_constant = true;
  const auto c = sample_gaf_zeros(Window::disk(0, 0, 2), 64, 3, opts);
  double closest = 1e300;
  for (const Point& p : c.points) closest = std::min(closest, norm(p));
  EXPECT_LT(closest, 1e-10);
}

TEST(GafZeros, TruncationSafety) {
  EXPECT_THROW(sample_gaf_zeros(Window::disk(0, 0, 5), 50, 1), InvalidArgument);
  EXPECT_THROW(sample_gaf_zeros(Window::disk(0, 0, 1), 600, 1), InvalidArgument);
  EXPECT_THROW(sample_gaf_zeros(Window::interval(0, 1), 64, 1), InvalidArgument);
}

TEST(SamplerInvariants, SimplicitySmoke) {
  const SpectralDppPlan plan(KernelSpec::sine(), Window::interval(0, 20), 128);
  GinibreOptions g;
  g.engine = GinibreEngine::kMatrixModel;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    ASSERT_TRUE(is_simple(sample_poisson(Window::rect(0, 5, 0, 5), 1.0, s)));
    ASSERT_TRUE(is_simple(sample_renewal_dpp(0.25, Window::interval(0, 20), s)));
    ASSERT_TRUE(is_simple(sample_cox_cosine(Window::interval(0, 20), s)));
    ASSERT_TRUE(is_simple(plan.sample(s)));
    ASSERT_TRUE(is_simple(sample_ginibre(Window::disk(0, 0, 2), s, g)));
    ASSERT_TRUE(is_simple(sample_gaf_zeros(Window::disk(0, 0, 2), 64, s)));
  }
}

TEST(SamplerInvariants, MeanDensityOne) {
  auto density = [](auto sample, double volume, int seeds) {
    double n = 0.0;
    for (int s = 0; s < seeds; ++s) n += static_cast<double>(sample(derive_seed(21, s)).size());
    return n / (seeds * volume);
  };
  const Window line = Window::interval(0, 500);
  EXPECT_NEAR(density([&](auto s) { return sample_renewal_dpp(0.125, line, s); }, 500.0, 100), 1.0, 0.05);
  EXPECT_NEAR(density([&](auto s) { return sample_cox_cosine(line, s); }, 500.0, 100), 1.0, 0.05);
  EXPECT_NEAR(density([&](auto s) { return sample_permanental(KernelSpec::gauss(1), line, 8192, s); }, 500.0, 100),
              1.0, 0.05);
  const Window square = Window::rect(0, 20, 0, 20);
  EXPECT_NEAR(density([&](auto s) { return sample_poisson(square, 1.0, s); }, 400.0, 100), 1.0, 0.05);
  const Window disk = Window::disk(0, 0, std::sqrt(400.0 / pi));
  GinibreOptions g;
  g.engine = GinibreEngine::kMatrixModel;
  EXPECT_NEAR(density([&](auto s) { return sample_ginibre(disk, s, g); }, 400.0, 20), 1.0, 0.05);
}
