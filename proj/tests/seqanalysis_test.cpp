#include "coordlat/seqanalysis.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "coordlat/coordinator.hpp"
#include "gtest/gtest.h"

namespace coordlat {
namespace {

using V = std::vector<Rational>;

Integer leibniz(const std::vector<Integer>& m, std::size_t r) {
  std::vector<std::size_t> p(r);
  std::iota(p.begin(), p.end(), 0);
  Integer total(0);
  do {
    int inv = 0;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) inv += p[i] > p[j];
    Integer t(inv % 2 ? -1 : 1);
    for (std::size_t i = 0; i < r; ++i) t *= m[i * r + p[i]];
    total += t;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

TEST(LogConcave, Examples) {
  EXPECT_TRUE(check_log_concave(V{1, 4, 1}).holds);
  auto bad = check_log_concave(V{1, 1, 2});
  EXPECT_FALSE(bad.holds);
  ASSERT_TRUE(bad.witness);
  EXPECT_EQ(bad.witness->index, (std::vector<std::size_t>{1}));
  EXPECT_TRUE(check_log_concave(coordinator(Family::B, 16).poly.coeffs()).holds);
  EXPECT_TRUE(check_log_concave(V{}).holds);
  EXPECT_TRUE(check_log_concave(V{5}).holds);
  EXPECT_THROW(check_log_concave(V{1, -1, 1}), InputError);
}

TEST(Unimodal, Examples) {
  EXPECT_TRUE(check_unimodal(V{1, 3, 3, 1}).holds);
  EXPECT_TRUE(check_unimodal(V{1, 2, 2, 2, 1}).holds);
  EXPECT_TRUE(check_unimodal(V{3, 2, 1}).holds);
  auto bad = check_unimodal(V{1, 3, 2, 4});
  EXPECT_FALSE(bad.holds);
  ASSERT_TRUE(bad.witness);
  EXPECT_EQ(bad.witness->index, (std::vector<std::size_t>{2, 3}));
}

TEST(NoInternalZeros, Examples) {
  EXPECT_TRUE(check_no_internal_zeros(V{0, 0, 1, 2, 0}).holds);
  auto bad = check_no_internal_zeros(V{1, 0, 1});
  EXPECT_FALSE(bad.holds);
  EXPECT_EQ(bad.witness->index, (std::vector<std::size_t>{1}));
}

TEST(Palindromic, Examples) {
  EXPECT_TRUE(is_palindromic(V{1, 4, 1}));
  EXPECT_TRUE(is_palindromic(V{}));
  EXPECT_FALSE(is_palindromic(V{1, 15, 23, 1}));
}

TEST(Bareiss, Examples) {
  EXPECT_EQ(bareiss_determinant({1, 1, 0, 1, 1, 1, 0, 1, 1}, 3), -1);
  EXPECT_EQ(bareiss_determinant({}, 0), 1);
  EXPECT_EQ(bareiss_determinant({0, 1, 1, 0}, 2), -1);
  EXPECT_EQ(bareiss_determinant({1, 2, 2, 4}, 2), 0);
  EXPECT_THROW(bareiss_determinant({1, 2, 3}, 2), InputError);
}

TEST(Bareiss, AgreesWithLeibniz) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> entry(-6, 6);
  for (std::size_t r = 1; r <= 6; ++r) {
    for (int trial = 0; trial < 80; ++trial) {
      std::vector<Integer> m(r * r);
      for (auto& x : m) x = entry(rng) * (trial % 3 == 0 ? 1 : 1000003);
      if (trial % 5 == 0) m[r * r - 1] = 0;
      EXPECT_EQ(bareiss_determinant(m, r), leibniz(m, r));
    }
  }
}

TEST(PolyaFrequency, Examples) {
  auto a = pf_minor_check(V{1, 2, 1}, 2);
  EXPECT_TRUE(a.holds);
  EXPECT_EQ(a.order, 2);
  EXPECT_FALSE(a.clamped);

  auto b = pf_minor_check(V{1, 1, 1}, 3);
  EXPECT_FALSE(b.holds);
  EXPECT_EQ(b.order, 3);
  ASSERT_TRUE(b.witness);
  EXPECT_EQ(b.witness->index, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_EQ(b.witness->cols, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(pf_minor_check(V{1, 1, 1}, 2).holds);

  EXPECT_TRUE(pf_minor_check(coordinator(Family::C, 5).poly.coeffs(), 3).holds);
}

TEST(PolyaFrequency, OrderIsClamped) {
  auto v = pf_minor_check(V{1, 2, 1}, 10);
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(v.clamped);
  EXPECT_EQ(v.order, 3);
  EXPECT_THROW(pf_minor_check(V{1, 2, 1}, 0), InputError);
  EXPECT_THROW(pf_minor_check(V{1, -2, 1}, 2), InputError);
}

TEST(PolyaFrequency, RationalScalingDoesNotMatter) {
  V half{make_rational(1, 2), 1, make_rational(1, 2)};
  EXPECT_TRUE(pf_minor_check(half, 3).holds);
  V third{make_rational(1, 3), make_rational(1, 3), make_rational(1, 3)};
  auto v = pf_minor_check(third, 3);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(v.witness->index, (std::vector<std::size_t>{1, 2, 3}));
}

// Products of positive linear factors are real-rooted, hence PF to all
// orders and log-concave.
TEST(PolyaFrequency, RealRootedProductsPass) {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> c(1, 9), deg(1, 6);
  for (int trial = 0; trial < 25; ++trial) {
    Polynomial p = Polynomial::constant(1);
    const int d = deg(rng);
    for (int i = 0; i < d; ++i) p *= Polynomial{c(rng), c(rng)};
    EXPECT_TRUE(check_log_concave(p.coeffs()).holds);
    EXPECT_TRUE(check_unimodal(p.coeffs()).holds);
    EXPECT_TRUE(pf_minor_check(p.coeffs(), 4).holds) << p.to_string();
  }
}

TEST(PolyaFrequency, ReversalSymmetry) {
  std::mt19937 rng(31);
  std::uniform_int_distribution<int> c(1, 20);
  for (int trial = 0; trial < 30; ++trial) {
    V s(static_cast<std::size_t>(2 + trial % 5));
    for (auto& x : s) x = c(rng);
    V rev(s.rbegin(), s.rend());
    for (int r = 1; r <= 3; ++r) EXPECT_EQ(pf_minor_check(s, r).holds, pf_minor_check(rev, r).holds);
    EXPECT_EQ(check_log_concave(s).holds, check_log_concave(rev).holds);
  }
}

// First negative minor by brute force over a generous window.
TEST(PolyaFrequency, AgreesWithBruteForceOnSmallSequences) {
  std::mt19937 rng(37);
  std::uniform_int_distribution<int> c(0, 4);
  for (int trial = 0; trial < 60; ++trial) {
    V s(static_cast<std::size_t>(2 + trial % 3));
    for (auto& x : s) x = c(rng);
    s.front() = 1 + c(rng);
    s.back() = 1 + c(rng);
    const int n = static_cast<int>(s.size()) - 1;
    for (int r = 1; r <= 3; ++r) {
      const int size = n + r + 3;
      bool brute_ok = true;
      auto rows = detail::combinations(size, r, false);
      for (std::size_t ri = 0; ri < rows.size() && brute_ok; ri += r) {
        for (std::size_t ci = 0; ci < rows.size() && brute_ok; ci += r) {
          std::vector<Integer> m(static_cast<std::size_t>(r * r));
          for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
              int d = rows[ri + i] - rows[ci + j];
              m[i * r + j] = (d >= 0 && d <= n) ? Integer(s[d].get_num()) : Integer(0);
            }
          if (bareiss_determinant(m, r) < 0) brute_ok = false;
        }
      }
      EXPECT_EQ(pf_minor_check(s, r).holds, brute_ok) << trial << " r=" << r;
    }
  }
}

TEST(Coefficients, ClassicalFamiliesUpTo30) {
  for (Family f : {Family::A, Family::C}) {
    for (int n = 1; n <= 30; ++n) {
      auto h = coordinator(f, n).poly;
      EXPECT_TRUE(check_log_concave(h.coeffs()).holds);
      EXPECT_TRUE(check_unimodal(h.coeffs()).holds);
    }
  }
}

}  // namespace
}  // namespace coordlat
