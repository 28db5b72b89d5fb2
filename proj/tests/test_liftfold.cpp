#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "upcycle/liftfold.hpp"

using namespace upcycle;
using namespace upcycle::fixtures;

TEST(DiamondOffsets, OneBasedResidues) {
  EXPECT_EQ(diamond_offsets(cyc(kU4), 4), OffsetSet{0});
  EXPECT_EQ(diamond_offsets(cyc("(0*1*)"), 2), OffsetSet{0});
  EXPECT_EQ(diamond_offsets(cyc("(*011*100)"), 4), OffsetSet{1});
}

TEST(Lift, PrintedTableRows) {
  auto u = cyc(kU4);
  EXPECT_EQ(format(lift({u, 4, {0}, Necklace(cyc("(0011)"), 2, 1, 2)})), "(0010110000111101)");
  EXPECT_EQ(format(lift({u, 4, {0}, Necklace(cyc("(0110)"), 2, 1, 2)})), "(0010110100111100)");
  // rotations of the filler give the same two cycles
  auto l3 = lift({u, 4, {0}, Necklace(cyc("(1001)"), 2, 1, 2)});
  auto l4 = lift({u, 4, {0}, Necklace(cyc("(1100)"), 2, 1, 2)});
  EXPECT_TRUE(rotation_offset(l3, cyc(kLift2)));
  EXPECT_TRUE(rotation_offset(l4, cyc(kLift1)));
}

TEST(Lift, EmptySelectionIsIdentity) {
  auto db = cyc(kNotLift);
  EXPECT_EQ(lift({db, 4, {}, Necklace(cyc("(0011)"), 2, 1, 2)}), db);
}

TEST(Lift, RejectsBadSpec) {
  auto u = cyc(kU4);
  EXPECT_THROW(lift({u, 4, {1}, Necklace(cyc("(0011)"), 2, 1, 2)}), std::invalid_argument);
  EXPECT_THROW(lift({u, 4, {0}, euler_necklace(2, 1, 3)}), std::invalid_argument);
}

TEST(DebruijnLift, IsDeBruijn) {
  auto w = debruijn_lift(cyc(kU4), 4);
  EXPECT_EQ(verify_upcycle(w, 4).params->d, 0u);
  EXPECT_TRUE(is_lift(w, cyc(kU4), 4));
  auto big = debruijn_lift(binary8(0), 8);
  EXPECT_EQ(big.size(), 256u);
  EXPECT_TRUE(verify_upcycle(big, 8).valid);
  auto m = debruijn_lift(cyc(kAlphMult, 4), 4);
  EXPECT_EQ(verify_upcycle(m, 4).to_string(), "VALID a=4 n=4 d=0 trivial");
}

TEST(IsLift, Examples) {
  EXPECT_TRUE(is_lift(cyc(kLift1), cyc(kU4), 4));
  EXPECT_TRUE(is_lift(cyc(kLift2), cyc(kU4), 4));
  EXPECT_FALSE(is_lift(cyc(kNotLift), cyc(kU4), 4));
  EXPECT_FALSE(is_lift(cyc(kU4), cyc(kU4), 4));
}

TEST(TryFold, Examples) {
  auto f = try_fold(cyc(kLift1), 4, 1, {0});
  ASSERT_TRUE(f);
  EXPECT_TRUE(rotation_offset(*f, cyc(kU4)));
  for (std::size_t o = 0; o < 4; ++o) EXPECT_FALSE(try_fold(cyc(kNotLift), 4, 1, {o})) << o;
  EXPECT_EQ(try_fold(cyc(kNotLift), 4, 0, {}), cyc(kNotLift));
}

TEST(TryFold, RoundTripsBinaryEight) {
  auto u = binary8(2);
  auto w = debruijn_lift(u, 8);
  auto f = try_fold(w, 8, 1, {0});
  ASSERT_TRUE(f);
  EXPECT_EQ(canonical_rotation(*f), canonical_rotation(u));
}

TEST(EnumerateLifts, TwoCyclesForU4) {
  auto res = enumerate_debruijn_lifts(cyc(kU4), 4);
  EXPECT_TRUE(res.complete);
  std::vector<CycPWord> want{canonical_rotation(cyc(kLift1)), canonical_rotation(cyc(kLift2))};
  std::sort(want.begin(), want.end());
  EXPECT_EQ(res.cycles, want);
}

TEST(EnumerateLifts, DeBruijnBase) {
  auto res = enumerate_debruijn_lifts(cyc(kNotLift), 4);
  EXPECT_EQ(res.cycles, std::vector<CycPWord>{canonical_rotation(cyc(kNotLift))});
}

TEST(EnumerateLifts, FourLetterBaseIsBounded) {
  // (4!)^16 fillers: refused without a cap, sampled with one
  auto base = cyc(kAlphMult, 4);
  EXPECT_THROW(enumerate_debruijn_lifts(base, 4), CapExceeded);
  auto res = enumerate_debruijn_lifts(base, 4, 5);
  EXPECT_FALSE(res.complete);
  EXPECT_EQ(res.cycles.size(), 5u);
  for (const auto& w : res.cycles) EXPECT_EQ(verify_upcycle(w, 4).params->d, 0u);
}
