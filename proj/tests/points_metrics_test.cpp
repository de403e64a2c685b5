#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "meq/errors.hpp"
#include "meq/metrics.hpp"
#include "meq/parallel.hpp"
#include "meq/points.hpp"

using meq::CirclePoint;
using meq::OdometerPoint;
using meq::SymbolicPoint;

namespace {

SymbolicPoint random_word(std::uint64_t seed, std::int64_t radius) {
  meq::Rng rng(seed);
  std::vector<meq::Symbol> w(static_cast<std::size_t>(2 * radius + 1));
  for (auto& s : w) s = static_cast<meq::Symbol>(rng.below(2));
  return SymbolicPoint::from_word(2, -radius, w);
}

SymbolicPoint with_flips(const SymbolicPoint& x, std::vector<std::int64_t> at) {
  return SymbolicPoint(
      2,
      [x, at](std::int64_t k) {
        meq::Symbol s = x.at(k);
        for (auto a : at)
          if (a == k) s ^= 1;
        return s;
      },
      x.window().first, x.window().second, "flipped");
}

}  // namespace

TEST(SymbolicPoint, OracleIsDeterministicAndInAlphabet) {
  const auto x = random_word(3, 200);
  for (std::int64_t k = -200; k <= 200; ++k) {
    EXPECT_EQ(x.at(k), x.at(k));
    EXPECT_LT(x.at(k), 2);
  }
  EXPECT_THROW(x.at(201), meq::OracleExhausted);
  EXPECT_FALSE(x.resolvable(-201));
}

TEST(SymbolicPoint, ShiftMovesWindow) {
  const auto x = random_word(4, 50);
  const auto y = x.shifted(7);
  EXPECT_EQ(y.window(), (std::pair<std::int64_t, std::int64_t>{-57, 43}));
  for (std::int64_t k = -57; k <= 43; ++k) EXPECT_EQ(y.at(k), x.at(k + 7));
  EXPECT_EQ(y.shifted(-7).render(-50, 50), x.render(-50, 50));
  EXPECT_EQ(SymbolicPoint::periodic(3, {0, 1, 2}).render(-3, 3), "0120120");
}

TEST(CantorMetric, Examples) {
  const auto x = SymbolicPoint::constant(2, 0);
  const auto same = cantor_metric(x, x, 10);
  EXPECT_TRUE(same.flagged);
  EXPECT_EQ(same.value(), std::ldexp(1.0, -11));

  const auto y0 = with_flips(x, {0});
  EXPECT_EQ(cantor_metric(x, y0, 10).value(), 1.0);
  EXPECT_FALSE(cantor_metric(x, y0, 10).flagged);

  const auto y = with_flips(x, {-3, 6});
  EXPECT_EQ(cantor_metric(x, y, 10).value(), 0.125);
  EXPECT_EQ(cantor_metric(x, y, 2).value(), 0.125);
  EXPECT_TRUE(cantor_metric(x, y, 2).flagged);
}

TEST(CantorMetric, SymmetryTriangleAndShift) {
  meq::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto x = random_word(rng.next(), 80);
    // Nearby points: copies of x with a few late flips, so distances vary.
    const auto y = with_flips(x, {rng.between(-40, 40), rng.between(-40, 40)});
    const auto z = with_flips(x, {rng.between(-40, 40)});
    const auto dxy = cantor_metric(x, y, 60), dyx = cantor_metric(y, x, 60);
    EXPECT_EQ(dxy.units, dyx.units);
    EXPECT_LE(dxy.units, cantor_metric(x, z, 60).units + cantor_metric(z, y, 60).units);
    if (!dxy.flagged) {
      EXPECT_LE(cantor_metric(x.shifted(1), y.shifted(1), 60).units, 2 * dxy.units);
    }
  }
}

TEST(CircleMetric, Examples) {
  const auto d = [](double a, double b) {
    return circle_metric(CirclePoint::from_double(a), CirclePoint::from_double(b)).value();
  };
  EXPECT_NEAR(d(0.1, 0.9), 0.2, 1e-15);
  EXPECT_EQ(d(0.3, 0.3), 0.0);
  EXPECT_EQ(d(0.25, 0.75), 0.5);
  meq::Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const auto a = CirclePoint::from_bits(rng.next()), b = CirclePoint::from_bits(rng.next()),
               c = CirclePoint::from_bits(rng.next());
    EXPECT_EQ(circle_metric(a, b).units, circle_metric(b, a).units);
    EXPECT_LE(circle_metric(a, b).units, circle_metric(a, c).units + circle_metric(c, b).units);
  }
}

TEST(CirclePoint, RationalAndTimes) {
  EXPECT_EQ(CirclePoint::from_rational(1, 4).bits(), std::uint64_t{1} << 62);
  EXPECT_EQ(CirclePoint::from_rational(5, 4).bits(), std::uint64_t{1} << 62);
  EXPECT_EQ(CirclePoint::from_rational(1, 4).times(4).bits(), 0u);
  const auto g = meq::RotationNumber::golden();
  EXPECT_EQ(g.value(), static_cast<double>((std::sqrt(5.0L) - 1) / 2));
  EXPECT_EQ(meq::RotationNumber::silver().value(), static_cast<double>(std::sqrt(2.0L) - 1));
}

TEST(OdometerMetric, Examples) {
  const auto p = [](std::int64_t n) { return OdometerPoint::from_integer(n); };
  EXPECT_EQ(odometer_metric(p(1), p(3), 64).value(), 0.5);
  EXPECT_EQ(odometer_metric(p(0), p(1), 64).value(), 1.0);
  const auto same = odometer_metric(p(9), p(9), 20);
  EXPECT_TRUE(same.flagged);
  EXPECT_EQ(same.value(), std::ldexp(1.0, -21));
}

TEST(OdometerMetric, TranslationIsAnIsometry) {
  meq::Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const auto a = OdometerPoint::from_integer(rng.between(-1000000, 1000000));
    const auto b = OdometerPoint::from_integer(rng.between(-1000000, 1000000));
    const std::int64_t n = rng.between(-50, 50);
    EXPECT_EQ(odometer_metric(a.plus(1), b.plus(1), 64).units, odometer_metric(a, b, 64).units);
    EXPECT_EQ(odometer_metric(a.plus(n), b.plus(n), 64).units, odometer_metric(a, b, 64).units);
  }
}

TEST(Odometer, CarryChain) {
  const auto seven = OdometerPoint::from_integer(7);
  const auto eight = seven.plus(1);
  EXPECT_FALSE(eight.digit(0));
  EXPECT_FALSE(eight.digit(1));
  EXPECT_FALSE(eight.digit(2));
  EXPECT_TRUE(eight.digit(3));
  EXPECT_EQ(eight.integer(), 8);
  EXPECT_EQ(OdometerPoint::from_integer(0).plus(1), OdometerPoint::from_integer(1));
  EXPECT_EQ(seven.plus(1).plus(-1), seven);
  // -1 has every digit 1.
  const auto minus_one = OdometerPoint::from_integer(-1);
  for (int i = 0; i < 64; ++i) EXPECT_TRUE(minus_one.digit(i));
}

TEST(Odometer, NonIntegerDepthIsEnforced) {
  const auto p = OdometerPoint::from_digits([](int i) { return i % 3 == 0; }, 10);
  EXPECT_TRUE(p.digit(9));
  EXPECT_THROW(p.digit(10), meq::OracleExhausted);
  EXPECT_EQ(p.low_bits(4), 0b1001u);
}

TEST(ProductMetric, Modes) {
  const auto a = meq::make_product(CirclePoint::from_double(0.0), CirclePoint::from_double(0.0));
  const auto b = meq::make_product(CirclePoint::from_double(0.2), CirclePoint::from_double(0.3));
  const auto& pa = a.as<meq::ProductPoint>();
  const auto& pb = b.as<meq::ProductPoint>();
  EXPECT_NEAR(product_metric(pa, pb, meq::ProductMode::max, 64).value(), 0.3, 1e-15);
  EXPECT_NEAR(product_metric(pa, pb, meq::ProductMode::sum, 64).value(), 0.5, 1e-15);
  EXPECT_EQ(product_metric(pa, pa, meq::ProductMode::max, 64).value(), 0.0);

  const auto x = random_word(8, 40), y = with_flips(x, {3});
  const auto xx = meq::make_product(x, x), yy = meq::make_product(y, y);
  EXPECT_EQ(product_metric(xx.as<meq::ProductPoint>(), yy.as<meq::ProductPoint>(), meq::ProductMode::max, 30).units,
            cantor_metric(x, y, 30).units);

  const auto mixed = meq::make_product(x, CirclePoint{});
  EXPECT_THROW(product_metric(xx.as<meq::ProductPoint>(), mixed.as<meq::ProductPoint>(), meq::ProductMode::max, 30),
               meq::MismatchedKinds);
}

TEST(Hamming, Examples) {
  const auto zero = SymbolicPoint::constant(2, 0), one = SymbolicPoint::constant(2, 1);
  EXPECT_EQ(meq::hamming_observable(zero, zero), 0);
  EXPECT_EQ(meq::hamming_observable(zero, one), 1);
  const auto x = random_word(9, 100), cx = x.complemented();
  for (std::int64_t t = -100; t <= 100; ++t) EXPECT_EQ(meq::hamming_observable(x.shifted(t), cx.shifted(t)), 1);
}

TEST(Point, KindMismatch) {
  const meq::Point p(CirclePoint{});
  EXPECT_TRUE(p.is<CirclePoint>());
  EXPECT_THROW(p.as<SymbolicPoint>(), meq::MismatchedKinds);
}
