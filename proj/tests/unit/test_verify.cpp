#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "diffrakt/gaf.hpp"
#include "diffrakt/verify.hpp"

using namespace diffrakt;

TEST(Verify, FreshSuitePasses) {
  const auto results = run_invariant_suite();
  std::ostringstream os;
  print_report(os, results);
  EXPECT_TRUE(all_passed(results)) << os.str();
  bool zeta_pin = false;
  for (const auto& r : results) zeta_pin = zeta_pin || r.name.find("zeta(3)") != std::string::npos;
  EXPECT_TRUE(zeta_pin);
  for (const char* module : {"numerics", "kernels", "analytic", "samplers", "estimators"})
    EXPECT_NE(os.str().find(std::string(" ") + module + "/"), std::string::npos) << module;
}

TEST(Verify, MutationIsCaught) {
  VerifyOptions opts;
  opts.gaf_h_mutation = 1e-3;
  opts.include_samplers = false;
  const auto results = run_invariant_suite(opts);
  EXPECT_FALSE(all_passed(results));
  bool transform_failed = false;
  for (const auto& r : results)
    if (!r.pass && r.name.find("transform") != std::string::npos) transform_failed = true;
  EXPECT_TRUE(transform_failed);
  EXPECT_EQ(detail::gaf_h_perturbation(), 0.0);
}

TEST(Verify, ReportFormat) {
  std::ostringstream os;
  print_report(os, {InvariantResult{"numerics", "x", true, 1.0, 2.0}, InvariantResult{"kernels", "y", false, 3.0, 0.5}});
  EXPECT_EQ(os.str().substr(0, 17), "PASS numerics/x m");
  EXPECT_NE(os.str().find("FAIL kernels/y measured=3 tol=0.5"), std::string::npos);
}
