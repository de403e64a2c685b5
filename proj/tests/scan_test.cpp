#include <gtest/gtest.h>

#include <cmath>

#include "meq/errors.hpp"
#include "meq/metrics.hpp"
#include "meq/scan.hpp"
#include "meq/systems.hpp"

using meq::CirclePoint;
using meq::Observable;
using meq::Point;

namespace {

std::vector<double> dyadic_deltas(int from, int to) {
  std::vector<double> d;
  for (int k = from; k <= to; ++k) d.push_back(std::ldexp(1.0, -k));
  return d;
}

}  // namespace

TEST(PairSamplers, PairsAreWithinDelta) {
  const auto alpha = meq::RotationNumber::golden();
  const auto sturm = meq::sturmian_system(alpha);
  const auto tm = meq::thue_morse_system();
  const auto odo = meq::odometer_system();
  const auto toe = meq::toeplitz_system();
  for (int k : {2, 5, 9}) {
    const double delta = std::ldexp(1.0, -k);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto [a, b] = meq::sturmian_pair_sampler(alpha)(delta, seed);
      EXPECT_LT(sturm.metric(a, b, 64).value(), delta);
      const auto [c, d] = meq::thue_morse_pair_sampler()(delta, seed);
      EXPECT_LT(tm.metric(c, d, 64).value(), delta);
      const auto [e, f] = meq::odometer_pair_sampler()(delta, seed);
      EXPECT_LT(odo.metric(e, f, 64).value(), delta);
      const auto [g, h] = meq::toeplitz_pair_sampler()(delta, seed);
      EXPECT_LT(toe.metric(g, h, 64).value(), delta);
    }
  }
}

TEST(PairSamplers, ExhaustionIsReported) {
  EXPECT_THROW(meq::odometer_pair_sampler(32)(std::ldexp(1.0, -40), 1), meq::SamplerExhausted);
  EXPECT_THROW(meq::thue_morse_pair_sampler(64)(std::ldexp(1.0, -200), 1), meq::SamplerExhausted);
}

TEST(Scan, OdometerRowsNeverExceedDelta) {
  meq::ScanParams p;
  p.family = meq::dyadic_family(10);
  p.tail = {6, 10};
  p.translate_budget = 256;
  p.pairs_per_delta = 10;
  p.seed = 4;
  const auto t = meq::mean_equi_scan(meq::odometer_system(), meq::odometer_pair_sampler(), dyadic_deltas(1, 30), p);
  ASSERT_EQ(t.rows.size(), 30u);
  for (const auto& r : t.rows) {
    EXPECT_LE(r.max_D, r.delta);
    EXPECT_LE(r.mean_D, r.max_D);
    EXPECT_EQ(r.pairs, 10);
  }
}

TEST(Scan, SturmianDecays) {
  meq::ScanParams p;
  p.family = meq::dyadic_family(12);
  p.tail = {10, 12};
  p.translate_budget = 1024;
  p.pairs_per_delta = 10;
  p.seed = 5;
  const auto alpha = meq::RotationNumber::golden();
  const auto t = meq::mean_equi_scan(meq::sturmian_system(alpha), meq::sturmian_pair_sampler(alpha),
                                     dyadic_deltas(3, 8), p);
  EXPECT_GE(t.rows.front().max_D / t.rows.back().max_D, 4.0);
}

TEST(Scan, ThueMorseDoesNotDecay) {
  meq::ScanParams p;
  p.family = meq::dyadic_family(12);
  p.tail = {12, 12};
  p.translate_budget = 4096;
  p.pairs_per_delta = 4;
  p.seed = 6;
  p.observable = Observable::hamming();
  const auto t = meq::mean_equi_scan(meq::thue_morse_system(), meq::thue_morse_pair_sampler(), dyadic_deltas(2, 8), p);
  for (const auto& r : t.rows) EXPECT_GE(r.max_D, 0.1) << r.delta;
  EXPECT_EQ(t.to_csv().substr(0, t.to_csv().find('\n')), "delta,pairs,max_D,mean_D,flagged_fraction");
}

TEST(Scan, DeltasMustDecrease) {
  meq::ScanParams p;
  p.family = meq::dyadic_family(4);
  p.tail = {2, 4};
  EXPECT_THROW(meq::mean_equi_scan(meq::odometer_system(), meq::odometer_pair_sampler(), {0.25, 0.5}, p),
               meq::InvalidParameter);
}

TEST(ProductCheck, SturmianNearbyPairsHaveNearbyMeasures) {
  const auto alpha = meq::RotationNumber::golden();
  const auto sys = meq::sturmian_system(alpha);
  const auto pt = [&](double th) -> Point { return meq::sturmian_point(alpha, CirclePoint::from_double(th)); };
  const std::vector<std::pair<Point, Point>> pairs{{pt(0.1), pt(0.3)}, {pt(0.1 + 1e-4), pt(0.3 + 1e-4)}};
  const auto r = meq::product_pointwise_ue_check(
      sys, pairs, {Observable::product_symbol_indicator(1, 1), Observable::product_symbol_indicator(0, 1)},
      meq::dyadic_family(16), {13, 16}, 0.01);
  ASSERT_EQ(r.pairs.size(), 2u);
  for (const auto& p : r.pairs) EXPECT_EQ(p.ue.verdict, meq::Verdict::unique) << p.label;
  ASSERT_EQ(r.continuity.size(), 1u);
  EXPECT_LE(r.continuity[0].measure_distance, 0.01);
}

TEST(ProductCheck, DiagonalPairStaysOnDiagonalWords) {
  const auto sys = meq::thue_morse_system();
  const Point x = meq::thue_morse_two_sided_point();
  const auto r = meq::product_pointwise_ue_check(
      sys, {{x, x}}, {Observable::product_symbol_indicator(0, 1), Observable::product_symbol_indicator(1, 0)},
      meq::dyadic_family(12), {8, 12}, 0.01);
  for (const auto& o : r.pairs.at(0).ue.observables) EXPECT_EQ(o.limit_estimate.real(), 0.0);
}

TEST(ProductCheck, SkewProductMeasuresStayApart) {
  const auto golden = CirclePoint::from_double(meq::RotationNumber::golden().value());
  const auto silver = CirclePoint::from_double(meq::RotationNumber::silver().value());
  const auto sys = meq::skew_product_system({golden, silver});
  const auto pt = [](CirclePoint x, double th) -> Point { return meq::make_product(x, CirclePoint::from_double(th)); };
  // Same base: theta1 - theta2 is constant along the orbit, so the character average is its value.
  const std::vector<std::pair<Point, Point>> pairs{{pt(golden, 0.25), pt(golden, 0.7)},
                                                   {pt(golden, 0.25), pt(silver, 0.7)}};
  const auto r = meq::product_pointwise_ue_check(sys, pairs, {Observable::circle_character({0, 1, 0, -1})},
                                                 meq::dyadic_family(16), {14, 16}, 0.01);
  const auto same = r.pairs.at(0).ue.observables.at(0).limit_estimate;
  const auto diff = r.pairs.at(1).ue.observables.at(0).limit_estimate;
  EXPECT_NEAR(std::abs(same), 1.0, 1e-12);
  EXPECT_LE(std::abs(diff), 0.05);
  EXPECT_GE(r.continuity.at(0).measure_distance, 0.3);
}
