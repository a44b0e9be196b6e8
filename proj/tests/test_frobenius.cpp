#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "cobforge/frobenius.hpp"
#include "cobforge/milnor.hpp"

using namespace cobforge;
using namespace cobforge::frobenius;

namespace {

// Values up to `limit` that are nonnegative combinations of a positive basis.
std::vector<bool> brute_representable(const std::vector<int>& basis, int limit) {
  std::vector<bool> ok(static_cast<std::size_t>(limit) + 1, false);
  ok[0] = true;
  for (int x = 1; x <= limit; ++x)
    for (int t : basis)
      if (t <= x && ok[static_cast<std::size_t>(x - t)]) {
        ok[static_cast<std::size_t>(x)] = true;
        break;
      }
  return ok;
}

int brute_frobenius(const std::vector<int>& basis, int limit) {
  const auto ok = brute_representable(basis, limit);
  int last = -1;
  for (int x = 0; x <= limit; ++x)
    if (!ok[static_cast<std::size_t>(x)]) last = x;
  return last;
}

std::vector<ExactInt> exact(const std::vector<int>& v) { return {v.begin(), v.end()}; }

// Sums reachable with every coefficient at most `cap`, for a small mixed-sign basis.
std::set<int> bounded_sums(const std::vector<int>& basis, int cap) {
  std::set<int> sums{0};
  for (int t : basis) {
    std::set<int> next;
    for (int s : sums)
      for (int c = 0; c <= cap; ++c) next.insert(s + c * t);
    sums = std::move(next);
  }
  return sums;
}

}  // namespace

TEST(FrobeniusBound, Examples) {
  EXPECT_EQ(brute_frobenius({3, 5}, 15), 7);
  EXPECT_EQ(brute_frobenius({6, 10, 15}, 200), 29);
  EXPECT_EQ(frobenius_bound(exact({3, 5})), 7);
  EXPECT_EQ(frobenius_bound(exact({6, 10, 15})), 29);
  EXPECT_EQ(frobenius_bound(exact({1})), 0);
  EXPECT_THROW(frobenius_bound(exact({4, 6})), domain_error);
  EXPECT_THROW(frobenius_bound(exact({3, -5})), domain_error);
  EXPECT_THROW(frobenius_bound(exact({})), domain_error);
}

TEST(FrobeniusBound, ExactOnRandomPositiveBases) {
  std::mt19937 rng(5);
  int tested = 0;
  while (tested < 500) {
    std::vector<int> basis(1 + rng() % 4);
    for (auto& t : basis) t = 1 + static_cast<int>(rng() % 50);
    if (std::accumulate(basis.begin(), basis.end(), 0, [](int g, int t) { return std::gcd(g, t); }) != 1) continue;
    ++tested;
    const ExactInt bound = frobenius_bound(exact(basis));
    const int brute = brute_frobenius(basis, 2600);
    ASSERT_EQ(bound, std::max(brute, 0));
    const int b = bound.convert_to<int>();
    for (int x = b + 1; x <= b + 500; ++x) {
      const auto rep = represent(x, exact(basis));
      ASSERT_TRUE(rep.valid());
    }
    if (brute >= 0) {
      EXPECT_FALSE(try_represent(bound, exact(basis)).has_value());
      EXPECT_THROW(represent(bound, exact(basis)), domain_error);
    }
  }
}

TEST(Represent, Examples) {
  const auto r1 = represent(8, exact({3, 5}));
  EXPECT_EQ(r1.coefficients, exact({1, 1}));
  const auto r2 = represent(1, exact({3, -5}));
  EXPECT_EQ(r2.coefficients, exact({2, 1}));
  EXPECT_TRUE(r2.valid());

  std::vector<ExactInt> basis{-milnor::s_kn(14, 1)};
  for (int k = 0; k <= 12; ++k)
    if (k != 1) basis.push_back(-milnor::s_kn(14, k));
  EXPECT_EQ(basis.front(), 15);
  const auto r3 = represent(44, basis);
  EXPECT_TRUE(r3.valid());
  EXPECT_EQ(r3.target, 44);
}

TEST(Represent, Errors) {
  EXPECT_THROW(represent(7, exact({3, 5})), domain_error);
  EXPECT_THROW(represent(-1, exact({3, 5})), domain_error);
  EXPECT_THROW(represent(10, exact({-3, 5})), domain_error);
  EXPECT_THROW(represent(10, exact({4, -6})), domain_error);
}

TEST(Represent, Deterministic) {
  const auto basis = exact({7, -12, 30, -45, 11});
  for (int x = -50; x <= 50; ++x) EXPECT_EQ(represent(x, basis).coefficients, represent(x, basis).coefficients);
}

TEST(Represent, MixedSignRandomBases) {
  std::mt19937 rng(1234);
  int tested = 0;
  while (tested < 1000) {
    std::vector<int> basis(2 + rng() % 3);
    basis[0] = 1 + static_cast<int>(rng() % 40);
    for (std::size_t i = 1; i < basis.size(); ++i) basis[i] = static_cast<int>(rng() % 81) - 40;
    if (std::accumulate(basis.begin(), basis.end(), 0, [](int g, int t) { return std::gcd(g, std::abs(t)); }) != 1)
      continue;
    ++tested;
    // Window of targets the brute force proves representable.
    const auto sums = bounded_sums(basis, 3);
    for (int x = -60; x <= 60; ++x) {
      const auto rep = try_represent(x, exact(basis));
      if (sums.count(x)) {
        ASSERT_TRUE(rep.has_value()) << "x=" << x;
      }
      if (rep) {
        ASSERT_TRUE(rep->valid());
      }
    }
  }
}
