#include <gtest/gtest.h>

#include <vector>

#include "meq/errors.hpp"
#include "meq/group.hpp"
#include "meq/parallel.hpp"

using meq::GroupElement;
using meq::Ratio;
using meq::Window;

TEST(Group, LawsOnRandomTriples) {
  meq::Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto a = GroupElement::z2(rng.between(-1000000, 1000000), rng.between(-1000000, 1000000));
    const auto b = GroupElement::z2(rng.between(-1000000, 1000000), rng.between(-1000000, 1000000));
    const auto c = GroupElement::z2(rng.between(-1000000, 1000000), rng.between(-1000000, 1000000));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + GroupElement::identity(2), a);
    EXPECT_TRUE((a + (-a)).is_identity());
    EXPECT_EQ(a + b, b + a);
  }
}

TEST(Foelner, ExplicitConstruction) {
  const std::vector<std::int64_t> lengths{1, 2, 4}, starts{0, 0, 0};
  const auto f = meq::make_interval_foelner(lengths, starts);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[2].size(), 4);
  for (std::int64_t i = 0; i < 4; ++i) EXPECT_EQ(f[2].element(i), GroupElement::z(i));

  const std::vector<std::int64_t> l1{10}, s1{5};
  const auto g = meq::make_interval_foelner(l1, s1);
  EXPECT_EQ(g[0].size(), 10);
  EXPECT_TRUE(g[0].contains(GroupElement::z(5)));
  EXPECT_TRUE(g[0].contains(GroupElement::z(14)));
  EXPECT_FALSE(g[0].contains(GroupElement::z(15)));
  EXPECT_FALSE(g[0].contains(GroupElement::z(4)));
}

TEST(Foelner, RejectsBadInput) {
  const std::vector<std::int64_t> empty;
  const std::vector<std::int64_t> one{1}, two{1, 2}, zero{0};
  EXPECT_THROW(meq::make_interval_foelner(empty, empty), meq::InvalidParameter);
  EXPECT_THROW(meq::make_interval_foelner(two, one), meq::InvalidParameter);
  EXPECT_THROW(meq::make_interval_foelner(zero, one), meq::InvalidParameter);
}

TEST(Foelner, DyadicLengthsDouble) {
  const auto f = meq::dyadic_family(20);
  for (std::size_t n = 0; n + 1 < f.size(); ++n) {
    EXPECT_EQ(f[n].start, GroupElement::z(0));
    EXPECT_EQ(f[n + 1].size(), 2 * f[n].size());
  }
  const auto box = meq::dyadic_family(5, 2);
  EXPECT_EQ(box.dim(), 2);
  EXPECT_EQ(box[5].size(), 1024);
}

TEST(Foelner, DefectValues) {
  const std::vector<std::int64_t> l{10}, s{0};
  const auto f = meq::make_interval_foelner(l, s);
  EXPECT_EQ(meq::foelner_defect(f[0], GroupElement::z(1)), (Ratio{1, 5}));
  EXPECT_DOUBLE_EQ(meq::foelner_defect(f[0], GroupElement::z(1)).value(), 0.2);
  EXPECT_EQ(meq::foelner_defect(f[0], GroupElement::z(0)).num, 0);
}

// Direct symmetric-difference count over the two index sets.
static Ratio defect_by_enumeration(std::int64_t start, std::int64_t len, std::int64_t g) {
  std::int64_t sym = 0;
  for (std::int64_t t = start - std::abs(g); t < start + len + std::abs(g); ++t) {
    const bool in_f = t >= start && t < start + len;
    const bool in_gf = t - g >= start && t - g < start + len;
    sym += in_f != in_gf;
  }
  return Ratio::reduced(sym, len);
}

TEST(Foelner, DyadicDefectMatchesEnumeration) {
  const auto f = meq::dyadic_family(20);
  double previous = 2.0;
  for (int n = 1; n <= 20; ++n) {
    const Ratio d = meq::foelner_defect(f[n], GroupElement::z(1));
    EXPECT_EQ(d, Ratio::reduced(2, std::int64_t{1} << n));
    if (n <= 14) {
      EXPECT_EQ(d, defect_by_enumeration(0, std::int64_t{1} << n, 1));
    }
    EXPECT_LT(d.value(), previous);
    previous = d.value();
  }
  for (std::int64_t g : {-7, -3, 2, 5, 31}) {
    for (int n = 6; n <= 12; ++n) {
      const std::int64_t len = std::int64_t{1} << n;
      EXPECT_EQ(meq::foelner_defect(f[n], GroupElement::z(g)), Ratio::reduced(2 * std::abs(g), len));
      EXPECT_EQ(meq::foelner_defect(f[n], GroupElement::z(g)), defect_by_enumeration(0, len, g));
    }
  }
}

TEST(Foelner, TranslationPreservesSizesAndDefects) {
  const auto f = meq::dyadic_family(12);
  const auto t = meq::translate_foelner(f, GroupElement::z(5));
  for (std::size_t n = 0; n < f.size(); ++n) {
    EXPECT_EQ(t[n].start, GroupElement::z(5));
    EXPECT_EQ(t[n].size(), f[n].size());
    for (std::int64_t g : {-3, 1, 4})
      EXPECT_EQ(meq::foelner_defect(t[n], GroupElement::z(g)), meq::foelner_defect(f[n], GroupElement::z(g)));
  }
  EXPECT_EQ(meq::translate_foelner(t, GroupElement::z(-5)), f);
}

TEST(Foelner, BoxDefect) {
  const auto f = meq::dyadic_family(4, 2);
  // |g B symdiff B| for B = [0,16)^2 and g = (1, 0) is 2 * 16.
  EXPECT_EQ(meq::foelner_defect(f[4], GroupElement::z2(1, 0)), Ratio::reduced(32, 256));
}
