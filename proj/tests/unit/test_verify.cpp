#include <gtest/gtest.h>

#include "ccpivot/generators.hpp"
#include "ccpivot/verify.hpp"

using namespace ccpivot;

TEST(Verify, PassesOnEveryInstanceKind) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    EXPECT_TRUE(verify_instance(gnp(8, 0.5, seed)).pass());
    EXPECT_TRUE(verify_instance(random_constrained(7, 0.5, 2, 2, seed)).pass());
    EXPECT_TRUE(verify_instance(random_weighted(7, 0.5, 5, seed)).pass());
  }
}

TEST(Verify, ExpectationsAreChecked) {
  Expectations ex = parse_expectations(R"({"opt":5,"pivot_cost":12,"single_cluster_cost":5})");
  const auto good = verify_instance(matching_lower_bound(5), ex);
  EXPECT_TRUE(good.pass());
  ex.opt = 4;
  EXPECT_FALSE(verify_instance(matching_lower_bound(5), ex).pass());

  Expectations infeasible;
  infeasible.infeasible = false;
  const ConstrainedInstance bad{Graph(3), {{0, 1}}, {{0, 1}}};
  EXPECT_FALSE(verify_instance(bad, infeasible).pass());
  infeasible.infeasible = true;
  EXPECT_TRUE(verify_instance(bad, infeasible).pass());
}

TEST(Verify, RejectsUnknownExpectation) {
  EXPECT_THROW(parse_expectations(R"({"optimum":1})"), FormatError);
  EXPECT_THROW(parse_expectations(R"({"infeasible":1})"), FormatError);
}
