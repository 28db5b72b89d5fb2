#include <gtest/gtest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "upcycle/nonexist.hpp"

using namespace upcycle;
using namespace upcycle::fixtures;

namespace {

// bit i set: position i is a diamond
bool naive_curtained(std::uint32_t mask, std::size_t n) {
  for (std::size_t k = 1; k <= n; ++k) {
    bool all = true;
    for (std::size_t i = 0; i < k && all; ++i) all = ((mask >> i) & 1) || ((mask >> (n - k + i)) & 1);
    if (all) return true;
  }
  return false;
}

// least d such that every frame with at least d diamonds is curtained
std::size_t naive_D(std::size_t n) {
  std::vector<bool> bad(n + 2, false);
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    if (!naive_curtained(m, n)) bad[static_cast<std::size_t>(std::popcount(m))] = true;
  }
  for (std::size_t d = 0; d <= n + 1; ++d) {
    bool ok = true;
    for (std::size_t e = d; e <= n && ok; ++e) ok = !bad[e];
    if (ok) return d;
  }
  return n + 1;
}

Frame frame_from_mask(std::uint32_t mask, std::size_t n) {
  Frame f;
  for (std::size_t i = 0; i < n; ++i) f.marks.push_back((mask >> i) & 1 ? Mark::diamond : Mark::solid);
  return f;
}

std::vector<std::size_t> open_ds(AlphabetSize a, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t d = 1; d < n; ++d) {
    if (feasibility(a, n, d).status != FeasibilityStatus::ruled_out) out.push_back(d);
  }
  return out;
}

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> v;
  for (auto d = lo; d <= hi; ++d) v.push_back(d);
  return v;
}

}  // namespace

TEST(Curtain, Examples) {
  EXPECT_EQ(is_curtained(parse_frame("•⋄••⋄•")), std::optional<std::size_t>(2));
  EXPECT_EQ(is_curtained(parse_frame("•⋄⋄••")), std::optional<std::size_t>(3));
  EXPECT_FALSE(is_curtained(parse_frame("•⋄⋄•••")));
  EXPECT_TRUE(is_k_curtained(parse_frame("*..."), 1));
  EXPECT_THROW(is_k_curtained(parse_frame("..."), 0), std::invalid_argument);
  EXPECT_THROW(is_k_curtained(parse_frame("..."), 4), std::invalid_argument);
}

TEST(Curtain, AgreesWithNaive) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      EXPECT_EQ(is_curtained(frame_from_mask(m, n)).has_value(), naive_curtained(m, n));
    }
  }
}

TEST(Curtain, ShortSolidRunsAlwaysCurtained) {
  for (std::size_t n = 1; n <= 12; ++n) {
    for (std::uint32_t m = 0; m < (1u << n); ++m) {
      bool long_run = false;
      for (std::size_t i = 0; i < n && !long_run; ++i) {
        long_run = n >= 3 && !((m >> i) & 1) && !((m >> ((i + 1) % n)) & 1) && !((m >> ((i + 2) % n)) & 1);
      }
      if (!long_run && m != 0) {
        EXPECT_FALSE(has_uncurtained_shift(frame_from_mask(m, n))) << n << " " << m;
      }
    }
  }
}

TEST(ComputeD, PublishedValues) {
  const std::vector<std::size_t> table = {1, 1, 1, 2, 2, 3, 4, 4, 5, 6, 6, 7, 8,
                                          9, 9, 10, 11, 12, 12, 13, 14, 15, 16, 17, 17, 18};
  for (std::size_t n = 1; n <= 26; ++n) EXPECT_EQ(compute_D(n), table[n - 1]) << n;
}

TEST(ComputeD, MatchesNaiveScan) {
  for (std::size_t n = 1; n <= 16; ++n) EXPECT_EQ(compute_D(n), naive_D(n)) << n;
}

TEST(ComputeD, Cap) {
  EXPECT_THROW(compute_D(0), CapExceeded);
  EXPECT_THROW(compute_D(27), CapExceeded);
}

TEST(Audit, U4) {
  auto r = curtain_audit(cyc(kU4), 4);
  ASSERT_TRUE(r.zero_window);
  EXPECT_EQ(*r.zero_window, 7u);
  EXPECT_EQ(format(r.zero_frame), ".*..");
  EXPECT_FALSE(r.zero_curtain_k);
  EXPECT_TRUE(r.pane_ok);
  EXPECT_TRUE(r.passes());
}

TEST(Audit, BinaryEight) {
  for (std::size_t i = 0; i < kBinary8.size(); ++i) EXPECT_TRUE(curtain_audit(binary8(i), 8).passes()) << i;
  EXPECT_TRUE(curtain_audit(cyc(kAlphMult, 4), 4).passes());
}

TEST(Audit, DiamondFirstInZeroWindowFails) {
  // 0^4 only covered by a window starting with a diamond
  auto r = curtain_audit(cyc("(*000111*101)"), 4);
  ASSERT_TRUE(r.zero_window);
  EXPECT_EQ(r.zero_curtain_k, std::optional<std::size_t>(1));
  EXPECT_FALSE(r.passes());
}

TEST(Feasibility, Examples) {
  auto v = feasibility(2, 4, 1);
  EXPECT_EQ(v.status, FeasibilityStatus::known_to_exist);
  EXPECT_TRUE(v.reasons.empty());
  for (std::size_t d = 1; d < 6; ++d) {
    auto r = feasibility(3, 6, d);
    EXPECT_EQ(r.status, FeasibilityStatus::ruled_out) << d;
    EXPECT_FALSE(r.reasons.empty());
  }
  EXPECT_EQ(open_ds(5, 10), std::vector<std::size_t>{2});
  EXPECT_EQ(open_ds(15, 10), std::vector<std::size_t>{2});
  EXPECT_EQ(open_ds(10, 10), range(1, 5));
}

TEST(Feasibility, ReasonsCarryWitnesses) {
  auto r = feasibility(3, 6, 1);
  auto it = std::find_if(r.reasons.begin(), r.reasons.end(),
                         [](const FeasibilityReason& x) { return x.rule == "frame-period"; });
  ASSERT_NE(it, r.reasons.end());
  EXPECT_EQ(it->witness, "gcd(a^(n-d),n)=3");
  EXPECT_FALSE(it->citation.empty());
  auto small = feasibility(2, 3, 1);
  EXPECT_EQ(small.status, FeasibilityStatus::ruled_out);
  EXPECT_EQ(small.reasons.front().rule, "small-n");
  EXPECT_EQ(feasibility(2, 2, 1).status, FeasibilityStatus::ruled_out);
  EXPECT_EQ(feasibility(2, 4, 0).status, FeasibilityStatus::ruled_out);
}

TEST(Feasibility, FixturesNotRuledOut) {
  EXPECT_NE(feasibility(2, 8, 1).status, FeasibilityStatus::ruled_out);
  EXPECT_NE(feasibility(4, 4, 1).status, FeasibilityStatus::ruled_out);
  EXPECT_NE(feasibility(4, 8, 1).status, FeasibilityStatus::ruled_out);
  EXPECT_NE(feasibility(6, 4, 1).status, FeasibilityStatus::ruled_out);
}

TEST(Feasibility, SixOnTwelve) {
  // gcd(6^(12-d),12) = 12 leaves frame period 12 with D(12) = 7
  EXPECT_EQ(open_ds(6, 12), range(1, 6));
  EXPECT_EQ(open_ds(12, 12), range(1, 6));
  EXPECT_EQ(open_ds(2, 12), std::vector<std::size_t>{3});
}

TEST(FeasibilityTable, RowsFourToEleven) {
  struct Want {
    std::size_t n;
    std::string cls;
    std::string ds;
  };
  const std::vector<Want> want = {
      {4, "2k", "1"},   {5, "5k", "1"},   {6, "6k", "1-2"},           {7, "7k", "1-3"},
      {8, "2k", "1-3"}, {9, "3k", "1-4"}, {10, "10k", "1-5"},         {10, "5k (2\xE2\x88\xA4k)", "2"},
      {11, "11k", "1-5"},
  };
  auto rows = feasibility_table(4, 11);
  ASSERT_EQ(rows.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(rows[i].n, want[i].n);
    EXPECT_EQ(rows[i].alphabet_class, want[i].cls) << want[i].n;
    EXPECT_EQ(rows[i].d_range(), want[i].ds) << want[i].n;
  }
}

TEST(FeasibilityTable, SmallNEmpty) {
  EXPECT_TRUE(feasibility_table(1, 3).empty());
}

TEST(FeasibilityTable, TwelveKeepsRestrictedEvenClass) {
  auto rows = feasibility_table(12, 12);
  auto it = std::find_if(rows.begin(), rows.end(), [](const FeasibilityRow& r) { return r.c == 2; });
  ASSERT_NE(it, rows.end());
  EXPECT_EQ(it->alphabet_class, "2k (3\xE2\x88\xA4k)");
  EXPECT_EQ(it->d_range(), "3");
}
