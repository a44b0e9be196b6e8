#include <gtest/gtest.h>

#include "cobforge/planner.hpp"

using namespace cobforge;
using namespace cobforge::planner;

TEST(MilnorNovikov, Examples) {
  EXPECT_TRUE(milnor_novikov_check(14, 1).is_generator);
  EXPECT_TRUE(milnor_novikov_check(14, -1).is_generator);
  EXPECT_TRUE(milnor_novikov_check(4, 5).is_generator);
  EXPECT_EQ(milnor_novikov_check(4, 5).required, "+-5");
  EXPECT_FALSE(milnor_novikov_check(4, 1).is_generator);
  EXPECT_FALSE(milnor_novikov_check(14, 15).is_generator);
  EXPECT_TRUE(milnor_novikov_check(1, 2).is_generator);  // CP^1, n+1 = 2
  EXPECT_THROW(milnor_novikov_check(0, 1), domain_error);
}

TEST(MilnorNovikov, ProjectiveSpacesInPrimePowerDimensions) {
  // s_n(CP^n) = n+1 is a generator exactly when n+1 is prime.
  for (int n = 1; n <= 40; ++n) EXPECT_EQ(milnor_novikov_check(n, n + 1).is_generator, is_prime(n + 1)) << n;
}

TEST(ConstructPlan, GeneratorDimensions) {
  for (int n : {14, 20, 32}) {
    const auto plan = construct_plan(n);
    EXPECT_EQ(plan.n, n);
    EXPECT_EQ(plan.predicted_milnor, 1);
    EXPECT_EQ(plan.base_milnor, ExactInt(n + 1) * plan.a);
    EXPECT_EQ(plan.counts.size(), static_cast<std::size_t>(n - 1));
    for (const auto& c : plan.counts) EXPECT_GE(c, 0);
    EXPECT_TRUE(verify_plan(plan));
    EXPECT_TRUE(milnor_novikov_check(n, plan.predicted_milnor).is_generator);
    EXPECT_EQ(predict_milnor(n, plan.base_milnor, plan.counts), 1);
    EXPECT_EQ(chern::milnor_projectivisation(plan.base), plan.base_milnor);
  }
}

TEST(ConstructPlan, Deterministic) {
  const auto a = construct_plan(20), b = construct_plan(20);
  EXPECT_EQ(to_json(a), to_json(b));
}

TEST(ConstructPlan, SmallestBaseParameter) {
  // With mixed-sign deltas every target is reachable, so a = 1.
  EXPECT_EQ(construct_plan(14).a, 1);
}

TEST(ConstructPlan, Rejections) {
  EXPECT_THROW(construct_plan(4), domain_error);
  EXPECT_THROW(construct_plan(15), domain_error);
  try {
    construct_plan(4);
  } catch (const domain_error& e) {
    EXPECT_NE(std::string(e.what()).find("n+1 is a prime power"), std::string::npos);
  }
}

TEST(VerifyPlan, CountsZero) {
  ModificationPlan plan;
  plan.n = 6;
  plan.a = 1;
  plan.base = chern::large_sn_spec(6, 1);
  plan.base_milnor = 7;
  plan.counts.assign(5, 0);
  plan.predicted_milnor = 7;
  EXPECT_TRUE(verify_plan(plan));
  plan.predicted_milnor = 1;
  EXPECT_FALSE(verify_plan(plan));
}

TEST(VerifyPlan, DetectsTampering) {
  const auto plan = construct_plan(14);
  for (std::size_t k = 0; k < plan.counts.size(); ++k) {
    auto bad = plan;
    bad.counts[k] += 1;
    EXPECT_FALSE(verify_plan(bad)) << k;
  }
  auto bad = plan;
  bad.base_milnor += 1;
  EXPECT_FALSE(verify_plan(bad));
  bad = plan;
  bad.counts.pop_back();
  EXPECT_FALSE(verify_plan(bad));
}

TEST(PlanJson, RoundTrip) {
  const auto plan = construct_plan(14);
  const auto j = to_json(plan);
  EXPECT_TRUE(j.at("base_milnor").is_string());
  EXPECT_EQ(j.at("predicted_milnor"), "1");
  const auto back = plan_from_json(j);
  EXPECT_EQ(back.counts, plan.counts);
  EXPECT_EQ(back.base, plan.base);
  EXPECT_TRUE(verify_plan(back));
  EXPECT_THROW(plan_from_json(nlohmann::json{{"n", 14}}), domain_error);
}
