#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "support.hpp"

using namespace mefe;
using namespace mefe::testing;

TEST(SeatVectors, SatisfyEquationsAndBound) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const Instance inst = random_instance(spec(seed, 2, 6, 3, 4));
    for (int x = 0; x < inst.num_courses(); ++x) {
      const auto classes = valuation_classes(inst, x);
      for (std::size_t j = 1; j < classes.top.size(); ++j) EXPECT_GT(classes.top[j - 1], classes.top[j]);
      const auto vectors = seat_vectors(classes, inst.capacity(x), inst.k());
      std::uint64_t bound = 1;
      for (std::size_t j = 0; j < classes.top.size(); ++j) bound *= static_cast<std::uint64_t>(inst.capacity(x) + 1);
      EXPECT_LE(vectors.size(), bound);
      for (const auto& a : vectors) {
        int seats = 0;
        Rational mass(0);
        for (std::size_t j = 0; j < a.size(); ++j) {
          EXPECT_LE(a[j], static_cast<int>(classes.members[j].size()));
          seats += a[j];
          mass = mass + Rational(a[j]) * Rational(classes.top[j]);
        }
        EXPECT_EQ(seats, inst.capacity(x));
        EXPECT_GE(mass, inst.k() * Rational(inst.capacity(x)));
      }
      EXPECT_TRUE(std::is_sorted(vectors.begin(), vectors.end()));
    }
  }
}

TEST(Buckets, ExactBoundaries) {
  const GeometricBuckets half(Rational(1, 2));  // ratio 2
  EXPECT_EQ(half.index(1), 1);
  EXPECT_EQ(half.index(2), 2);
  EXPECT_EQ(half.index(3), 2);
  EXPECT_EQ(half.index(4), 3);
  EXPECT_EQ(half.count(16), 5);
  EXPECT_EQ(half.count(15), 4);
  const GeometricBuckets third(Rational(1, 3));  // ratio 3/2
  // [1, 3/2), [3/2, 9/4), [9/4, 27/8), [27/8, 81/16)
  EXPECT_EQ(third.index(1), 1);
  EXPECT_EQ(third.index(2), 2);
  EXPECT_EQ(third.index(3), 3);
  EXPECT_EQ(third.index(4), 4);
  EXPECT_EQ(third.index(5), 4);
  EXPECT_EQ(third.index(6), 5);
}

TEST(Buckets, EveryValueInExactlyOneRange) {
  using boost::multiprecision::cpp_rational;
  for (const auto& [p, q] : {std::pair{1, 2}, {1, 3}, {1, 10}, {9, 10}}) {
    const GeometricBuckets b(Rational(p, q));
    const cpp_rational rho = cpp_rational(q) / cpp_rational(q - p);
    for (Value v = 1; v <= 200; ++v) {
      const int j = b.index(v);
      cpp_rational low(1);
      for (int i = 1; i < j; ++i) low *= rho;
      EXPECT_LE(low, cpp_rational(v));
      EXPECT_GT(low * rho, cpp_rational(v));
    }
  }
}

TEST(FptN, SingleClassPerCourse) {
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    auto s = spec(seed, 2, 5, 2, 4, Structure::TwoVal, TiePolicy::Distinct);
    const Instance inst = random_instance(s);
    const auto p = profile(inst);
    const bool single = std::all_of(p.distinct_values.begin(), p.distinct_values.end(), [](int r) { return r <= 1; });
    if (!single) continue;
    EXPECT_EQ(solve_fpt_n(inst).verdict, solve_bruteforce(inst).verdict);
  }
}

TEST(FptN, AgreesWithTwoValuation) {
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const Instance inst = random_instance(spec(seed, 1 + seed % 3, 6, 2, 4, Structure::TwoVal, TiePolicy::Distinct));
    const auto a = solve_fpt_n(inst);
    const auto b = solve_two_valuation(inst);
    ASSERT_TRUE(a.applicable());
    ASSERT_TRUE(b.applicable());
    EXPECT_EQ(a.verdict, b.verdict) << "seed " << seed;
  }
}

TEST(FptN, AllValuesBelowKIsNo) {
  InstanceBuilder b;
  b.add_course("x", 1);
  b.add_ta("t1");
  b.add_ta("t2");
  b.set_pair(0, 0, 1, 1, 1);
  b.set_pair(0, 1, 2, 1, 2);
  b.set_k(3);
  EXPECT_TRUE(solve_fpt_n(b.build()).is_no());
}

TEST(FptN, NotApplicable) {
  EXPECT_FALSE(solve_fpt_n(equal_grades()).applicable());
  const Instance inst = random_instance(spec(5, 3, 6, 2, 4, Structure::None, TiePolicy::Distinct));
  EXPECT_FALSE(solve_fpt_n(inst, {.budget = 1, .jobs = 1}).applicable());
}

TEST(FptN, OracleSweepAndJobs) {
  int yes = 0;
  for (std::uint64_t seed = 1; seed <= 400; ++seed) {
    const Instance inst = random_instance(spec(seed, 1 + seed % 3, 3 + seed % 4, 2, 4, Structure::None, TiePolicy::Distinct));
    const auto got = solve_fpt_n(inst);
    ASSERT_TRUE(got.applicable());
    EXPECT_EQ(got.verdict, solve_bruteforce(inst).verdict) << "seed " << seed;
    if (!got.is_yes()) continue;
    ++yes;
    EXPECT_TRUE(is_mefe(inst, *got.matching));
    EXPECT_EQ(solve_fpt_n(inst, {.budget = 100'000'000, .jobs = 4}).matching, got.matching);
  }
  EXPECT_GT(yes, 40);
}

TEST(Approx, RejectsBadEpsilon) {
  EXPECT_FALSE(solve_approx(fig1(), Rational(0)).applicable());
  EXPECT_FALSE(solve_approx(fig1(), Rational(1)).applicable());
}

TEST(Approx, SingleValueIsExact) {
  InstanceBuilder b;
  b.add_course("x", 2);
  for (int t = 0; t < 3; ++t) {
    b.add_ta("t" + std::to_string(t + 1));
    b.set_pair(0, t, 5, 1, t + 1);
  }
  b.set_k(5);
  const Instance inst = b.build();
  const auto o = solve_approx(inst, Rational(1, 2));
  ASSERT_TRUE(o.is_yes());
  EXPECT_EQ(*o.certified_k, Rational(5, 2));
  EXPECT_TRUE(is_mefe(inst, *o.matching));
}

TEST(Approx, GuaranteeOnYesInstances) {
  int yes = 0;
  for (std::uint64_t seed = 1; seed <= 600 && yes < 150; ++seed) {
    const Instance inst = random_instance(spec(seed, 1 + seed % 3, 3 + seed % 4, 2, 16, Structure::None, TiePolicy::Distinct));
    if (!solve_bruteforce(inst).is_yes()) continue;
    ++yes;
    const auto o = solve_approx(inst, Rational(1, 2));
    ASSERT_TRUE(o.is_yes()) << "seed " << seed;
    const auto r = verify(inst, *o.matching);
    EXPECT_TRUE(r.feasible);
    EXPECT_TRUE(r.envy_pairs.empty());
    for (const auto& a : r.avg_utils) EXPECT_GE(a, inst.k() / Rational(2));
  }
  EXPECT_GE(yes, 100);
}

TEST(Approx, NoWhenRelaxedThresholdUnreachable) {
  for (std::uint64_t seed = 1; seed <= 300; ++seed) {
    const Instance inst = random_instance(spec(seed, 3, 5, 1, 6, Structure::None, TiePolicy::Distinct));
    const Rational eps(1, 2);
    const auto relaxed = inst.with_threshold(inst.k() * (Rational(1) - eps));
    const auto o = solve_approx(inst, eps);
    if (solve_bruteforce(relaxed).is_no()) {
      EXPECT_TRUE(o.is_no()) << "seed " << seed;
    }
    if (o.is_yes()) {
      EXPECT_TRUE(is_mefe(relaxed, *o.matching));
    }
  }
}
