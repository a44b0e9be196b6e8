#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "cobforge/chern.hpp"

using namespace cobforge;
using namespace cobforge::chern;

namespace {

TruncatedPoly random_poly(std::mt19937& rng, const std::vector<int>& bounds, bool unit_constant = false) {
  TruncatedPoly p(bounds);
  for (const auto& e : cobforge::chern::detail::box_monomials(bounds))
    if (rng() % 3 == 0) p.add_term(e, static_cast<int>(rng() % 11) - 5);
  if (unit_constant) {
    const Exponent zero(bounds.size(), 0);
    p.add_term(zero, -p.constant_term() + (rng() % 2 ? 1 : -1));
  }
  return p;
}

std::vector<int> random_bounds(std::mt19937& rng) {
  std::vector<int> b(1 + rng() % 3);
  for (auto& x : b) x = static_cast<int>(rng() % 4);
  return b;
}

}  // namespace

TEST(TruncatedPoly, MultiplicationExamples) {
  const std::vector<int> b1{1}, b2{2};
  const auto u1 = TruncatedPoly::variable(b1, 0);
  const auto one1 = TruncatedPoly::one(b1);
  EXPECT_EQ((one1 + u1) * (one1 - u1), one1);

  const auto u2 = TruncatedPoly::variable(b2, 0);
  const auto one2 = TruncatedPoly::one(b2);
  auto expect = one2 + ExactInt(2) * u2 + u2 * u2;
  EXPECT_EQ(poly_pow(one2 + u2, 2), expect);
  EXPECT_EQ(expect.coeff({2}), 1);

  const std::vector<int> b11{1, 1};
  const auto x1 = TruncatedPoly::variable(b11, 0);
  const auto x2 = TruncatedPoly::variable(b11, 1);
  EXPECT_TRUE((x1 * x2 * x1).is_zero());

  EXPECT_THROW(poly_mul(u1, u2), domain_error);
}

TEST(TruncatedPoly, CanonicalForm) {
  TruncatedPoly p({2});
  p.add_term({1}, 3);
  p.add_term({1}, -3);
  p.add_term({3}, 7);  // beyond the bound
  EXPECT_TRUE(p.is_zero());
  EXPECT_TRUE(p.terms().empty());
}

TEST(TruncatedPoly, RingAxiomsRandomised) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 600; ++i) {
    const auto bounds = random_bounds(rng);
    const auto a = random_poly(rng, bounds), b = random_poly(rng, bounds), c = random_poly(rng, bounds);
    const auto one = TruncatedPoly::one(bounds);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a * one, a);
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(PolyInverse, Examples) {
  const std::vector<int> b3{3};
  const auto u = TruncatedPoly::variable(b3, 0);
  const auto one = TruncatedPoly::one(b3);
  EXPECT_EQ(poly_inverse(one + u), one - u + u * u - u * u * u);
  EXPECT_EQ(poly_inverse((one + u) * (one - u)), one + u * u);
  EXPECT_EQ(poly_inverse(TruncatedPoly::one({2, 1})), TruncatedPoly::one({2, 1}));
  EXPECT_THROW(poly_inverse(ExactInt(2) * one + u), domain_error);
  EXPECT_THROW(poly_inverse(u), domain_error);
}

TEST(PolyInverse, MultipliesBackToOneRandomised) {
  std::mt19937 rng(99);
  for (int i = 0; i < 600; ++i) {
    std::vector<int> bounds(1 + rng() % 2);
    for (auto& x : bounds) x = static_cast<int>(rng() % 5);  // total degree up to 8
    const auto a = random_poly(rng, bounds, true);
    const auto inv = poly_inverse(a);
    ASSERT_EQ(a * inv, TruncatedPoly::one(bounds)) << a.str();
    ASSERT_EQ(inv * a, TruncatedPoly::one(bounds));
  }
}

TEST(TotalChern, Examples) {
  for (int n = 3; n <= 8; ++n)
    for (int k = 1; k <= n - 2; ++k) {
      const std::vector<int> b{k};
      const auto u = TruncatedPoly::variable(b, 0);
      const auto one = TruncatedPoly::one(b);
      EXPECT_EQ(total_chern(dkn_spec(n, k)), (one - u) * poly_pow(one + u, static_cast<unsigned>(n - k - 1)));
      // Segre class (1+u)^{-(n-k-1)} (1-u)^{-1}
      EXPECT_EQ(poly_inverse(total_chern(dkn_spec(n, k))),
                poly_inverse(one - u) * poly_pow(poly_inverse(one + u), static_cast<unsigned>(n - k - 1)));
    }

  ProjBundleSpec trivial{{4}, {{0}, {0}, {0}}, false};
  EXPECT_EQ(total_chern(trivial), TruncatedPoly::one({4}));

  const int a = 3;
  const std::vector<int> b11{1, 1};
  const auto x1 = TruncatedPoly::variable(b11, 0), x2 = TruncatedPoly::variable(b11, 1);
  const auto one = TruncatedPoly::one(b11);
  EXPECT_EQ(total_chern(large_sn_spec(6, a)), (one - x1) * (one + ExactInt(a) * x2));
}

TEST(IntegrateTop, Examples) {
  for (int k = 1; k <= 6; ++k) {
    const std::vector<int> b{k};
    EXPECT_EQ(integrate_top(poly_pow(TruncatedPoly::variable(b, 0), static_cast<unsigned>(k))), 1);
    EXPECT_EQ(integrate_top(TruncatedPoly::one(b)), 0);
  }
  const std::vector<int> b11{1, 1};
  const auto one = TruncatedPoly::one(b11);
  EXPECT_EQ(integrate_top((one + TruncatedPoly::variable(b11, 0)) * (one + TruncatedPoly::variable(b11, 1))), 1);
}

TEST(FiberIntegral, Examples) {
  // <v^n, D_{k,n}> against sum_{i<=k} (-1)^i 2^{k-i} C(n-1,i).
  for (int n = 2; n <= 12; ++n)
    for (int k = 0; k <= n - 2; ++k) {
      const auto spec = dkn_spec(n, k);
      ExactInt expect = 0;
      for (int i = 0; i <= k; ++i) expect += sign_pow(i) * pow2(static_cast<unsigned>(k - i)) * binomial(n - 1, i);
      ASSERT_EQ(fiber_integral(TruncatedPoly::one(spec.base_dims), n, spec), expect) << n << " " << k;
    }
  const auto d24 = dkn_spec(4, 2);
  EXPECT_EQ(fiber_integral(TruncatedPoly::one({2}), 4, d24), 1);
  EXPECT_EQ(fiber_integral(TruncatedPoly::one({}), 5, dkn_spec(5, 0)), 1);
  for (int n = 3; n <= 9; ++n)
    for (int k = 1; k <= n - 2; ++k) {
      const auto spec = dkn_spec(n, k);
      EXPECT_EQ(fiber_integral(poly_pow(TruncatedPoly::variable({k}, 0), static_cast<unsigned>(k)), n - k, spec), 1);
    }
  EXPECT_THROW(fiber_integral(TruncatedPoly::one({2}), 1, d24), domain_error);
}

TEST(FiberIntegral, ClosedFormSums) {
  // <(u+v)^n> = 2^{k+1} - 1 and <(-u+v)^n> = sum_{i<=k} (-2)^i C(n-1,i), by
  // expanding the powers termwise through fiber_integral.
  for (int n = 3; n <= 12; ++n)
    for (int k = 1; k <= n - 2; ++k) {
      const auto spec = dkn_spec(n, k);
      const auto u = TruncatedPoly::variable({k}, 0);
      ExactInt plus = 0, minus = 0;
      TruncatedPoly up = TruncatedPoly::one({k});
      for (int i = 0; i <= k; ++i) {
        if (i) up *= u;
        const ExactInt vi = fiber_integral(up, n - i, spec);
        plus += binomial(n, i) * vi;
        minus += sign_pow(i) * binomial(n, i) * vi;
      }
      EXPECT_EQ(plus, pow2(static_cast<unsigned>(k + 1)) - 1);
      ExactInt expect = 0;
      for (int i = 0; i <= k; ++i) expect += sign_pow(i) * pow2(static_cast<unsigned>(i)) * binomial(n - 1, i);
      EXPECT_EQ(minus, expect);
    }
}

TEST(MilnorProjectivisation, Examples) {
  EXPECT_EQ(milnor_projectivisation(dkn_spec(3, 0)), 2);
  EXPECT_EQ(milnor_projectivisation(dkn_spec(4, 2)), 15);
  EXPECT_EQ(milnor_projectivisation(large_sn_spec(5, 3)), 18);
}

TEST(MilnorProjectivisation, BlowUpAtPoint) {
  for (int n = 2; n <= 16; ++n) EXPECT_EQ(milnor_projectivisation(dkn_spec(n, 0)), n + sign_pow(n));
}

TEST(MilnorProjectivisation, ProjectiveSpace) {
  for (int n = 2; n <= 16; ++n) EXPECT_EQ(milnor_projectivisation(projective_space_spec(n)), n + 1);
}

TEST(MilnorProjectivisation, LargeMilnorFamily) {
  for (int n = 4; n <= 12; ++n)
    for (int a = 1; a <= 5; ++a) EXPECT_EQ(milnor_projectivisation(large_sn_spec(n, a)), ExactInt(n + 1) * a);
}

// Conjugating the first CP^1 swaps O(-1) and O(+1) and reverses orientation,
// so the Milnor number changes sign.
TEST(MilnorProjectivisation, PositiveFirstTwistVariant) {
  for (int n = 4; n <= 12; ++n)
    for (int a = 1; a <= 5; ++a) EXPECT_EQ(milnor_projectivisation(large_sn_spec(n, a, +1)), -ExactInt(n + 1) * a);
}

TEST(MilnorProjectivisation, Guards) {
  ProjBundleSpec no_fiber{{1}, {{1}}, false};
  EXPECT_THROW(milnor_projectivisation(no_fiber), domain_error);
  ProjBundleSpec bad_arity{{1}, {{1, 2}, {0}}, false};
  EXPECT_THROW(milnor_projectivisation(bad_arity), domain_error);
  EXPECT_THROW(dkn_spec(4, 3), domain_error);
}
