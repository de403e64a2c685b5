#include <gtest/gtest.h>

#include <algorithm>

#include "meq/errors.hpp"
#include "meq/substitution.hpp"
#include "meq/systems.hpp"

using meq::SubstitutionRule;
using meq::Symbol;

namespace {

std::string as_text(const std::vector<Symbol>& w, std::size_t n) {
  std::string s;
  for (std::size_t i = 0; i < n && i < w.size(); ++i) s.push_back(static_cast<char>('0' + w[i]));
  return s;
}

}  // namespace

TEST(Substitution, Primitivity) {
  EXPECT_FALSE(SubstitutionRule::cantor().is_primitive());
  EXPECT_TRUE(SubstitutionRule::thue_morse().is_primitive());
  EXPECT_TRUE(SubstitutionRule::period_doubling().is_primitive());
}

TEST(Substitution, Validation) {
  SubstitutionRule empty_image{{{0, 1}, {}}, "bad"};
  EXPECT_THROW(empty_image.validate(), meq::InvalidParameter);
  SubstitutionRule out_of_alphabet{{{0, 2}, {1}}, "bad"};
  EXPECT_THROW(out_of_alphabet.validate(), meq::InvalidParameter);
}

TEST(Substitution, IterationPrefixes) {
  EXPECT_EQ(as_text(SubstitutionRule::cantor().iterate({0}, 2), 9), "010111010");
  EXPECT_EQ(as_text(SubstitutionRule::cantor().iterate({0}, 3), 27), "010111010111111111010111010");
  EXPECT_EQ(as_text(SubstitutionRule::thue_morse().iterate({0}, 3), 8), "01101001");
}

TEST(Substitution, FixedPointMatchesIteration) {
  for (const auto& rule : {SubstitutionRule::cantor(), SubstitutionRule::thue_morse(),
                           SubstitutionRule::period_doubling()}) {
    const Symbol seed = rule.name == "period-doubling" ? 1 : 0;
    const auto x = meq::substitution_fixed_point(rule, seed);
    const auto word = rule.iterate({seed}, rule.images[seed].size() == 3 ? 8 : 14);
    for (std::size_t k = 0; k < word.size(); ++k) ASSERT_EQ(x.at(static_cast<std::int64_t>(k)), word[k]) << k;
  }
  EXPECT_EQ(meq::substitution_fixed_point(SubstitutionRule::cantor(), 0).render(0, 8), "010111010");
  EXPECT_EQ(meq::substitution_fixed_point(SubstitutionRule::thue_morse(), 0).render(0, 7), "01101001");
}

TEST(Substitution, FarCoordinatesAreCheap) {
  const auto x = meq::substitution_fixed_point(SubstitutionRule::thue_morse(), 0);
  // x_n is the parity of the binary digit sum of n.
  for (std::int64_t n : {std::int64_t{100000000}, std::int64_t{123456789012}, (std::int64_t{1} << 50) + 3})
    EXPECT_EQ(x.at(n), __builtin_popcountll(static_cast<unsigned long long>(n)) & 1);
}

TEST(Substitution, CantorZeroCountDoubles) {
  const auto rule = SubstitutionRule::cantor();
  const auto x = meq::substitution_fixed_point(rule, 0);
  std::int64_t expected = 1;
  for (int k = 0; k <= 10; ++k) {
    const auto word = rule.iterate({0}, k);
    EXPECT_EQ(std::count(word.begin(), word.end(), Symbol{0}), expected);
    std::int64_t lazy = 0;
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(word.size()); ++i) lazy += x.at(i) == 0;
    EXPECT_EQ(lazy, expected);
    expected *= 2;
  }
}

TEST(Substitution, NonExtendableSeedRejected) {
  // Every power of 0 -> 10 starts with 1: no fixed point grows from 0.
  SubstitutionRule r{{{1, 0}, {1, 1}}, "no-fixed-point-from-0"};
  EXPECT_THROW(meq::substitution_fixed_point(r, 0), meq::InvalidParameter);
}

TEST(Substitution, TwoSidedPoints) {
  const auto cantor = meq::cantor_two_sided_point();
  for (std::int64_t k = -500; k < 0; ++k) EXPECT_EQ(cantor.at(k), 1) << k;
  EXPECT_EQ(cantor.render(0, 8), "010111010");

  const auto tm = meq::thue_morse_two_sided_point();
  EXPECT_EQ(tm.at(-1), 1);
  EXPECT_EQ(tm.render(0, 7), "01101001");
  // Left half of the 1.0 point under the squared rule: x_{-1-n} = 1 xor x_n.
  for (std::int64_t n = 0; n < 1000; ++n) EXPECT_EQ(tm.at(-1 - n), 1 ^ tm.at(n));

  const auto pd = meq::period_doubling_two_sided_point();
  const auto pd_word = SubstitutionRule::period_doubling().iterate({1}, 6);
  for (std::size_t k = 0; k < pd_word.size(); ++k) EXPECT_EQ(pd.at(static_cast<std::int64_t>(k)), pd_word[k]);
  // Block code y_n = x_n xor x_{n+1} of the Thue-Morse point 0.0.
  const auto tm00 = meq::thue_morse_two_sided_point(0, 0);
  for (std::int64_t n = -300; n < 300; ++n) EXPECT_EQ(pd.at(n), tm00.at(n) ^ tm00.at(n + 1)) << n;
}
