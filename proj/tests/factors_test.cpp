#include <gtest/gtest.h>

#include <cmath>

#include "meq/errors.hpp"
#include "meq/factors.hpp"
#include "meq/metrics.hpp"
#include "meq/parallel.hpp"
#include "meq/systems.hpp"

using meq::CirclePoint;
using meq::OdometerPoint;
using meq::Point;
using meq::SymbolicPoint;

namespace {

// Same coordinates, no construction metadata: forces structure detection.
SymbolicPoint raw_copy(const SymbolicPoint& x) {
  return SymbolicPoint(x.alphabet_size(), [x](std::int64_t k) { return x.at(k); }, -SymbolicPoint::kUnbounded,
                       SymbolicPoint::kUnbounded, "raw");
}

}  // namespace

TEST(SturmianFactor, RecoversPhase) {
  const auto alpha = meq::RotationNumber::golden();
  const auto x = meq::sturmian_point(alpha, CirclePoint::from_double(0.1));
  const auto ph = meq::sturmian_to_rotation_factor(x, alpha, 1000);
  EXPECT_LE(meq::circle_metric(ph.center, CirclePoint::from_double(0.1)).value(), 1e-2);
  EXPECT_LE(ph.radius, 1e-2);

  const auto next = meq::sturmian_to_rotation_factor(x.shifted(1), alpha, 1000);
  EXPECT_LE(meq::circle_metric(next.center, ph.center + alpha.phase).value(), 2 * std::max(ph.radius, next.radius));
}

TEST(SturmianFactor, BoundaryCodingsShareTheFiber) {
  const auto alpha = meq::RotationNumber::golden();
  const CirclePoint theta = -alpha.phase.times(5);  // theta + 5 alpha = 0
  const auto left = meq::sturmian_point(alpha, theta, meq::ArcConvention::left_closed, false);
  const auto right = meq::sturmian_point(alpha, theta, meq::ArcConvention::right_closed, false);
  EXPECT_NE(left.at(5), right.at(5));
  const auto a = meq::sturmian_to_rotation_factor(left, alpha, 500);
  const auto b = meq::sturmian_to_rotation_factor(right, alpha, 500);
  EXPECT_LE(meq::circle_metric(a.center, theta).value(), a.radius + 1e-15);
  EXPECT_LE(meq::circle_metric(b.center, theta).value(), b.radius + 1e-15);
}

TEST(SturmianFactor, RejectsNonSturmianWords) {
  const auto alpha = meq::RotationNumber::golden();
  EXPECT_THROW(meq::sturmian_to_rotation_factor(SymbolicPoint::constant(2, 1), alpha, 50), meq::NotASturmianPoint);
}

TEST(ToeplitzFactor, CanonicalResidues) {
  const auto x = meq::canonical_toeplitz_point();
  const auto residues = meq::toeplitz_hole_residues(x, 12);
  for (int n = 1; n <= 12; ++n) EXPECT_EQ(residues[n - 1], (std::int64_t{1} << n) - 1);
  // h = -(hole path) = -(-1).
  EXPECT_EQ(meq::toeplitz_to_odometer_factor(x, 40).low_bits(40), 1u);
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(meq::periodic_residues(x, n).size(), (std::size_t{1} << n) - 1);
}

TEST(ToeplitzFactor, Equivariance) {
  for (std::uint64_t seed : {3u, 4u, 5u}) {
    const auto x = meq::toeplitz_point({meq::random_hole_path(seed), {0, 1}, std::nullopt});
    const auto h = meq::toeplitz_to_odometer_factor(x, 40);
    EXPECT_EQ(meq::toeplitz_to_odometer_factor(x.shifted(1), 40).low_bits(40), h.plus(1).low_bits(40));
    EXPECT_EQ(meq::toeplitz_to_odometer_factor(x.shifted(-37), 40).low_bits(40), h.plus(-37).low_bits(40));
  }
}

TEST(ToeplitzFactor, DetectionMatchesConstruction) {
  for (std::uint64_t seed : {6u, 7u}) {
    const auto x = meq::toeplitz_point({meq::random_hole_path(seed), {0, 1}, std::nullopt}).shifted(11);
    EXPECT_EQ(meq::toeplitz_hole_residues(raw_copy(x), 9), meq::toeplitz_hole_residues(x, 9));
  }
  EXPECT_THROW(meq::toeplitz_hole_residues(raw_copy(meq::thue_morse_two_sided_point()), 6), meq::NotInFamily);
}

TEST(ToeplitzFactor, SharedResiduesShareDigits) {
  const std::vector<std::int64_t> residues{1, 1, 5, 13, 13, 45};
  const auto a = meq::toeplitz_point({meq::hole_path_from_residues(residues, meq::random_hole_path(1)), {0, 1}, {}});
  const auto b = meq::toeplitz_point({meq::hole_path_from_residues(residues, meq::random_hole_path(2)), {0, 1}, {}});
  EXPECT_EQ(meq::toeplitz_to_odometer_factor(a, 40).low_bits(6), meq::toeplitz_to_odometer_factor(b, 40).low_bits(6));
}

TEST(BlockCode, XorExampleAndSymmetries) {
  const auto x = meq::thue_morse_two_sided_point();
  const auto y = meq::thue_morse_block_code(x);
  EXPECT_EQ(x.render(0, 7), "01101001");
  EXPECT_EQ(y.render(0, 6), "1011101");
  EXPECT_EQ(meq::thue_morse_block_code(x.complemented()).render(-500, 500), y.render(-500, 500));
  EXPECT_EQ(meq::thue_morse_block_code(x.shifted(9)).render(-500, 500), y.shifted(9).render(-500, 500));
}

TEST(Fibers, ThueMorseIsTwoToOne) {
  const auto f = meq::thue_morse_factor();
  const auto r = meq::fiber_statistics(f, [&](std::uint64_t s) { return f.source.sample(s); }, std::ldexp(1.0, -60),
                                       300, 8);
  ASSERT_EQ(r.histogram.size(), 1u);
  EXPECT_EQ(r.histogram.at(2), 300u);
  EXPECT_EQ(r.regularity, 0.0);
}

TEST(Fibers, SturmianIsAlmostEverywhereInjective) {
  const auto f = meq::sturmian_factor(meq::RotationNumber::golden(), 1000);
  const std::size_t n = 200;
  const auto r = meq::fiber_statistics(f, [&](std::uint64_t s) { return f.source.sample(s); }, 0.02, n, 9);
  std::size_t total = 0;
  for (const auto& [size, count] : r.histogram) total += count;
  EXPECT_EQ(total, n);
  EXPECT_GE(r.regularity, 1.0 - 10.0 / n);
}

TEST(Fibers, IdentityFactorHasSingletons) {
  const auto f = meq::odometer_identity_factor();
  const auto r = meq::fiber_statistics(f, [&](std::uint64_t s) { return f.source.sample(s); }, std::ldexp(1.0, -40),
                                       200, 10);
  EXPECT_EQ(r.histogram.at(1), 200u);
  EXPECT_EQ(r.regularity, 1.0);
}

TEST(Fibers, ToleranceBelowResolutionIsRejected) {
  const auto f = meq::sturmian_factor(meq::RotationNumber::golden(), 100);
  EXPECT_THROW(
      meq::fiber_statistics(f, [&](std::uint64_t s) { return f.source.sample(s); }, 1e-12, 10, 1),
      meq::ResolutionTooCoarse);
}

TEST(Factors, EquivarianceDefects) {
  // Agreement to the compared depth reports the resolution floor, not 0.
  EXPECT_LE(meq::equivariance_defect(meq::thue_morse_factor(), 100, 100, 1), std::ldexp(1.0, -64));
  EXPECT_LE(meq::equivariance_defect(meq::odometer_identity_factor(), 100, 100, 2), std::ldexp(1.0, -64));
  EXPECT_LE(meq::equivariance_defect(meq::toeplitz_factor(), 100, 100, 3), std::ldexp(1.0, -32));
  const auto sf = meq::sturmian_factor(meq::RotationNumber::golden(), 1000);
  EXPECT_LE(meq::equivariance_defect(sf, 100, 100, 4), 2 * 1e-2);
}
