#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "meq/ergodic.hpp"
#include "meq/errors.hpp"
#include "meq/group.hpp"
#include "meq/metrics.hpp"
#include "meq/parallel.hpp"
#include "meq/systems.hpp"

using meq::CirclePoint;
using meq::GroupElement;
using meq::OdometerPoint;
using meq::Point;
using meq::SymbolicPoint;
using meq::SystemHandle;

namespace {

bool same_point(const SystemHandle& sys, const Point& p, const Point& q) {
  const auto m = sys.metric(p, q, 64);
  return m.units == 0 || m.flagged;
}

void check_action_laws(const SystemHandle& sys, std::uint64_t seed, int trials = 1000) {
  meq::Rng rng(seed);
  for (int i = 0; i < trials; ++i) {
    const Point x = sys.sample(rng.next());
    const auto g = GroupElement::z(rng.between(-5000, 5000));
    const auto h = GroupElement::z(rng.between(-5000, 5000));
    ASSERT_TRUE(same_point(sys, sys.act(GroupElement::z(0), x), x)) << sys.label;
    ASSERT_TRUE(same_point(sys, sys.act(g + h, x), sys.act(g, sys.act(h, x)))) << sys.label;
    ASSERT_TRUE(same_point(sys, sys.act(-g, sys.act(g, x)), x)) << sys.label;
  }
}

}  // namespace

TEST(Systems, ActionLaws) {
  check_action_laws(meq::cantor_substitution_system(), 1);
  check_action_laws(meq::thue_morse_system(), 2);
  check_action_laws(meq::period_doubling_system(), 3);
  check_action_laws(meq::sturmian_system(meq::RotationNumber::golden()), 4);
  check_action_laws(meq::toeplitz_system(), 5, 200);
  check_action_laws(meq::odometer_system(), 6);
  check_action_laws(meq::rotation_system(meq::RotationNumber::silver()), 7);
  check_action_laws(meq::skew_product_system({CirclePoint::from_double(0.3), CirclePoint::from_double(0.71)}), 8);
  const auto tm = meq::thue_morse_system();
  check_action_laws(meq::product_system(tm, tm), 9, 200);
}

TEST(Systems, ShiftAction) {
  const auto sys = meq::thue_morse_system();
  const SymbolicPoint x = meq::thue_morse_two_sided_point();
  const auto y = sys.act_n(1, x).as<SymbolicPoint>();
  for (std::int64_t k = -100; k < 100; ++k) EXPECT_EQ(y.at(k), x.at(k + 1));
  const auto back = sys.act_n(3, sys.act_n(-3, x)).as<SymbolicPoint>();
  EXPECT_EQ(back.render(-100, 100), x.render(-100, 100));
}

TEST(Systems, CantorSubshiftContainsConstantOne) {
  const auto sys = meq::cantor_substitution_system();
  bool seen = false;
  for (std::uint64_t s = 0; s < 200 && !seen; ++s) {
    const auto x = sys.sample(s).as<SymbolicPoint>();
    seen = x.render(-50, 50) == std::string(101, '1') && x.at(1000000) == 1;
  }
  EXPECT_TRUE(seen);
  // Blocks 1^(3^k) occur in the fixed point: the middle third of level k + 1.
  const auto x = meq::cantor_two_sided_point();
  for (int k = 1; k <= 8; ++k) {
    const std::int64_t len = static_cast<std::int64_t>(std::pow(3, k));
    EXPECT_EQ(x.render(len, 2 * len - 1), std::string(static_cast<std::size_t>(len), '1'));
  }
}

TEST(Systems, CantorZeroDensityIsTwoThirdsPower) {
  const auto x = meq::cantor_two_sided_point();
  std::int64_t len = 1, zeros_expected = 1;
  for (int k = 0; k <= 12; ++k) {
    std::int64_t zeros = 0;
    for (std::int64_t i = 0; i < len; ++i) zeros += x.at(i) == 0;
    EXPECT_EQ(zeros, zeros_expected);
    EXPECT_EQ(static_cast<double>(zeros) / static_cast<double>(len), std::ldexp(1.0, k) / std::pow(3.0, k));
    len *= 3;
    zeros_expected *= 2;
  }
}

TEST(Systems, ThueMorseComplementClosure) {
  const auto sys = meq::thue_morse_system();
  // Every length-8 word of a complemented sample occurs in the fixed point.
  const auto x = meq::thue_morse_two_sided_point();
  std::set<std::string> words;
  for (std::int64_t i = -4096; i < 4096; ++i) words.insert(x.render(i, i + 7));
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto c = sys.sample(s).as<SymbolicPoint>().complemented();
    for (std::int64_t i = -64; i < 64; ++i) EXPECT_TRUE(words.count(c.render(i, i + 7))) << s;
  }
}

TEST(Sturmian, FirstCoordinates) {
  const auto alpha = meq::RotationNumber::golden();
  const auto x = meq::sturmian_point(alpha, CirclePoint::from_double(0.1));
  EXPECT_EQ(x.at(0), 1);
  EXPECT_EQ(x.at(1), 0);
  EXPECT_EQ(x.at(2), 1);
  // Direct phase evaluation in long double.
  const long double a = (std::sqrt(5.0L) - 1) / 2;
  for (std::int64_t n = -2000; n <= 2000; ++n) {
    long double ph = 0.1L + n * a;
    ph -= std::floor(ph);
    ASSERT_EQ(x.at(n), ph < a ? 1 : 0) << n;
  }
}

TEST(Sturmian, FrequencyOfOnes) {
  const auto alpha = meq::RotationNumber::golden();
  const auto x = meq::sturmian_point(alpha, CirclePoint::from_double(0.1));
  std::int64_t ones = 0;
  const std::int64_t N = 1000000;
  for (std::int64_t n = 0; n < N; ++n) ones += x.at(n);
  EXPECT_NEAR(static_cast<double>(ones) / N, alpha.value(), 1e-4);
}

TEST(Sturmian, DisagreementDensityIsTwiceArcDistance) {
  const auto alpha = meq::RotationNumber::golden();
  const std::int64_t N = 1000000;
  for (double t : {0.001, 0.01, 0.05, 0.2}) {
    const auto x = meq::sturmian_point(alpha, CirclePoint::from_double(0.123));
    const auto y = meq::sturmian_point(alpha, CirclePoint::from_double(0.123 + t));
    std::int64_t differ = 0;
    for (std::int64_t n = 0; n < N; ++n) differ += x.at(n) != y.at(n);
    EXPECT_NEAR(static_cast<double>(differ) / N, 2 * t, 2e-4) << t;
  }
}

TEST(Sturmian, BoundaryPhaseIsAmbiguous) {
  const auto alpha = meq::RotationNumber::golden();
  const auto x = meq::sturmian_point(alpha, CirclePoint{});
  EXPECT_THROW(x.at(0), meq::BoundaryAmbiguity);
  const auto unguarded = meq::sturmian_point(alpha, CirclePoint{}, meq::ArcConvention::left_closed, false);
  EXPECT_EQ(unguarded.at(0), 1);
  const auto right = meq::sturmian_point(alpha, CirclePoint{}, meq::ArcConvention::right_closed, false);
  EXPECT_EQ(right.at(0), 0);
}

TEST(Toeplitz, CanonicalMember) {
  const auto x = meq::canonical_toeplitz_point();
  EXPECT_EQ(x.render(0, 6), "0100010");
  for (std::int64_t j = -1000; j < 1000; j += 2) EXPECT_EQ(x.at(j), 0);
  EXPECT_THROW(x.at(-1), meq::OracleExhausted);
  EXPECT_EQ(meq::canonical_toeplitz_point(1).at(-1), 1);
}

// Residues r mod p such that x is constant on r + pZ within [0, len).
static std::set<std::int64_t> periodic_part(const SymbolicPoint& x, std::int64_t p, std::int64_t len) {
  std::set<std::int64_t> out;
  for (std::int64_t r = 0; r < p; ++r) {
    bool constant = true;
    for (std::int64_t j = r + p; j < len && constant; j += p) constant = x.at(j) == x.at(r);
    if (constant) out.insert(r);
  }
  return out;
}

TEST(Toeplitz, PeriodicPartsGrowStrictly) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto x = meq::toeplitz_point({meq::random_hole_path(seed), {0, 1}, std::nullopt});
    for (int n = 1; n <= 9; ++n) {
      const std::int64_t p = std::int64_t{1} << n;
      const auto per = periodic_part(x, p, 4 * p);
      const auto next = periodic_part(x, 2 * p, 8 * p);
      EXPECT_EQ(per.size(), static_cast<std::size_t>(p - 1)) << n;
      // Residues periodic mod p stay periodic mod 2p, and one new class joins.
      for (auto r : per) {
        EXPECT_TRUE(next.count(r));
        EXPECT_TRUE(next.count(r + p));
      }
      EXPECT_EQ(next.size(), 2 * per.size() + 1);
    }
  }
}

TEST(Toeplitz, SharedPrefixGivesSharedSkeleton) {
  meq::Rng rng(12);
  for (int L = 2; L <= 8; ++L) {
    std::vector<std::int64_t> residues;
    std::int64_t k = 0;
    for (int n = 1; n <= L; ++n) {
      k += static_cast<std::int64_t>(rng.below(2)) << (n - 1);
      residues.push_back(k);
    }
    const std::vector<meq::Symbol> fills{0, 1};
    const auto a = meq::toeplitz_point(meq::ToeplitzParams{
        meq::hole_path_from_residues(residues, meq::random_hole_path(rng.next())), fills, std::nullopt});
    const auto b = meq::toeplitz_point(meq::ToeplitzParams{
        meq::hole_path_from_residues(residues, meq::random_hole_path(rng.next())), fills, std::nullopt});
    const std::int64_t half = std::int64_t{1} << L;
    for (std::int64_t j = -half; j < half; ++j) {
      if (((j - k) % half + half) % half == 0) continue;
      EXPECT_EQ(a.at(j), b.at(j)) << L << " " << j;
    }
  }
}

TEST(Toeplitz, IncompatibleResiduesRejected) {
  const std::vector<std::int64_t> bad{1, 2};
  EXPECT_THROW(meq::hole_path_from_residues(bad), meq::InvalidParameter);
  const std::vector<std::int64_t> out_of_range{2};
  EXPECT_THROW(meq::hole_path_from_residues(out_of_range), meq::InvalidParameter);
}

TEST(Odometer, Action) {
  const auto sys = meq::odometer_system();
  const auto one = sys.act_n(1, OdometerPoint::from_integer(0)).as<OdometerPoint>();
  EXPECT_TRUE(one.digit(0));
  for (int i = 1; i < 64; ++i) EXPECT_FALSE(one.digit(i));
  const auto eight = sys.act_n(1, OdometerPoint::from_integer(7)).as<OdometerPoint>();
  EXPECT_EQ(eight.low_bits(5), 8u);
  const auto theta = meq::random_odometer_point(3);
  EXPECT_EQ(sys.act_n(-1, sys.act_n(1, theta)).as<OdometerPoint>(), theta);
}

TEST(SkewProduct, ActionAndCharacterAverage) {
  const double xs[] = {0.3819660112501051, 0.41421356237309503, 0.1234567};
  std::vector<CirclePoint> base;
  for (double v : xs) base.push_back(CirclePoint::from_double(v));
  const auto sys = meq::skew_product_system(base);
  for (const auto& x : base) {
    const Point p = meq::make_product(x, CirclePoint{});
    const auto q = sys.act_n(2, p).as<meq::ProductPoint>();
    EXPECT_EQ(q.left().as<CirclePoint>(), x);
    EXPECT_EQ(q.right().as<CirclePoint>(), x.times(2));
    for (std::int64_t n : {-7, 5, 1000}) EXPECT_EQ(sys.act_n(n, p).as<meq::ProductPoint>().left().as<CirclePoint>(), x);

    const std::int64_t N = 100000;
    const auto avg = meq::birkhoff_average(sys, meq::Observable::circle_character({0, 1}), p,
                                           meq::Window{GroupElement::z(0), N});
    const double dist = std::min(x.value(), 1 - x.value());
    EXPECT_LE(std::abs(avg), 2.0 / (N * dist));
  }
}

TEST(ProductSystem, DiagonalAction) {
  const auto tm = meq::thue_morse_system();
  const auto prod = meq::product_system(tm, tm);
  const auto x = meq::thue_morse_two_sided_point();
  const auto y = x.shifted(5);
  const Point xy = meq::make_product(x, y);
  for (std::int64_t n : {-3, 0, 17}) {
    const auto moved = prod.act_n(n, xy).as<meq::ProductPoint>();
    EXPECT_EQ(moved.left().as<SymbolicPoint>().render(-20, 20), x.shifted(n).render(-20, 20));
    EXPECT_EQ(moved.right().as<SymbolicPoint>().render(-20, 20), y.shifted(n).render(-20, 20));
    const auto diag = prod.act_n(n, meq::make_product(x, x)).as<meq::ProductPoint>();
    EXPECT_TRUE(meq::cantor_metric(diag.left().as<SymbolicPoint>(), diag.right().as<SymbolicPoint>(), 64).flagged);
  }
  const auto xx = meq::make_product(x, x), yy = meq::make_product(y, y);
  EXPECT_EQ(prod.metric(xx, yy, 64).units, tm.metric(x, y, 64).units);
  EXPECT_THROW(meq::product_system(tm, meq::torus_rotation_system(meq::RotationNumber::golden(),
                                                                  meq::RotationNumber::silver())),
               meq::InvalidParameter);
}
