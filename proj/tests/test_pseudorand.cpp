#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "upcycle/liftfold.hpp"
#include "upcycle/pseudorand.hpp"

using namespace upcycle;
using namespace upcycle::fixtures;

namespace {

ExactRational q(long long num, long long den = 1) { return ExactRational(num, den); }

std::vector<ExactRational> row(std::initializer_list<ExactRational> xs) { return xs; }

}  // namespace

TEST(ExpectedMultiplicity, Examples) {
  EXPECT_EQ(expected_multiplicity(cyc("(01*1*11011*11)"), lin("011")), q(11, 4));
  EXPECT_EQ(expected_multiplicity(cyc(kU4), lin("00")), q(2));
  EXPECT_EQ(expected_multiplicity(cyc("(0011)"), lin("101")), q(0));
  EXPECT_THROW(expected_multiplicity(cyc(kU4), lin("0", 3)), std::invalid_argument);
}

TEST(ExpectedMultiplicity, LinearWindowsOnly) {
  EXPECT_EQ(expected_multiplicity(lin("0110"), lin("00")), q(0));
  EXPECT_EQ(expected_multiplicity(cyc("(0110)"), lin("00")), q(1));
}

TEST(Psd, Upcycles) {
  EXPECT_TRUE(check_psd(cyc(kU4), 4).holds);
  for (std::size_t i = 0; i < kBinary8.size(); ++i) EXPECT_TRUE(check_psd(binary8(i), 8).holds) << i;
  EXPECT_TRUE(check_psd(cyc(kAlphMult, 4), 4).holds);
}

TEST(Psd, Counterexample) {
  auto r = check_psd(cyc("(001*100*)"), 4);
  EXPECT_FALSE(r.holds);
  ASSERT_TRUE(r.witness);
  EXPECT_NE(r.expected, r.actual);
  EXPECT_EQ(r.expected, q(8, static_cast<long long>(checked_pow(2, r.witness->size()))));
  EXPECT_EQ(expected_multiplicity(cyc("(001*100*)"), *r.witness), r.actual);
}

TEST(Balance, Examples) {
  auto b = balance(cyc(kU4));
  EXPECT_EQ(b.counts, (std::vector<std::uint64_t>{3, 3}));
  EXPECT_TRUE(b.balanced);
  EXPECT_EQ(balance_formula({2, 4, 1}), q(3));
  auto up = balance(lin("***01111"));
  EXPECT_EQ(up.counts, (std::vector<std::uint64_t>{1, 4}));
  EXPECT_FALSE(up.balanced);
  EXPECT_TRUE(balance(cyc("(01)")).balanced);
}

TEST(Balance, FormulaOnFixtures) {
  for (std::size_t i = 0; i < kBinary8.size(); ++i) {
    auto b = balance(binary8(i));
    EXPECT_EQ(q(static_cast<long long>(b.counts[0])), balance_formula({2, 8, 1})) << i;
    EXPECT_TRUE(b.balanced);
  }
  auto m = balance(cyc(kAlphMult, 4));
  for (auto c : m.counts) EXPECT_EQ(q(static_cast<long long>(c)), balance_formula({4, 4, 1}));
}

TEST(Runs, UpcycleTable) {
  auto t = run_counts(cyc(kU4), 4);
  for (const auto& r : t.runs) EXPECT_EQ(r, row({q(4), q(2), q(1), q(1, 2)}));
  ASSERT_TRUE(t.r2);
  EXPECT_TRUE(*t.r2);
}

TEST(Runs, DeBruijnTable) {
  auto t = run_counts(cyc("(0000100110101111)"), 4);
  for (const auto& r : t.runs) EXPECT_EQ(r, row({q(8), q(4), q(2), q(1)}));
  EXPECT_TRUE(t.r2.value_or(false));
}

TEST(Runs, UpwordTable) {
  auto t = run_counts(lin("***01111"), 4);
  EXPECT_EQ(t.runs[0], row({q(5, 2), q(1), q(3, 8), q(1, 8)}));
  EXPECT_EQ(t.runs[1], row({q(11, 2), q(7, 2), q(17, 8), q(1)}));
  EXPECT_FALSE(t.r2);
}

TEST(Runs, SingleRunsAddDiamondShare) {
  for (std::size_t i = 0; i < kBinary8.size(); ++i) {
    auto u = binary8(i);
    auto t = run_counts(u, 8);
    auto b = balance(u);
    for (std::uint32_t l = 0; l < 2; ++l) {
      EXPECT_EQ(t.runs[l][0], q(static_cast<long long>(b.counts[l])) + q(static_cast<long long>(u.diamond_count()), 2));
    }
    EXPECT_TRUE(t.r2.value_or(false));
  }
}

TEST(Puncture, Examples) {
  EXPECT_EQ(format(puncture(cyc("(0011)"))), "(011)");
  EXPECT_EQ(format(puncture(cyc("(00010111)"))), "(0010111)");
  auto p = puncture(cyc("(0000100110101111)"));
  EXPECT_EQ(p.size(), 15u);
  EXPECT_TRUE(is_punctured_debruijn(p, 4));
  EXPECT_FALSE(is_punctured_debruijn(cyc("(0000100110101111)"), 4));
  EXPECT_THROW(puncture(cyc(kU4)), std::invalid_argument);
}

TEST(Autocorrelation, ZeroShift) {
  auto w = cyc("(0120221100)", 3);
  auto a = autocorrelation(w, 0, FiniteField(3));
  EXPECT_EQ(a.as_integer(), std::optional<std::int64_t>(10));
}

TEST(Autocorrelation, BinaryIsAgreementsMinusDisagreements) {
  auto w = cyc(kLift1);
  FiniteField f2(2);
  for (std::ptrdiff_t tau = -16; tau <= 16; ++tau) {
    auto ag = agreements(w, tau);
    EXPECT_EQ(autocorrelation(w, tau, f2).as_integer(),
              std::optional<std::int64_t>(static_cast<std::int64_t>(ag.agree) - static_cast<std::int64_t>(ag.disagree)));
  }
}

TEST(Autocorrelation, MSequence) {
  auto m = cyc("(0010111)");
  for (std::ptrdiff_t tau = 1; tau <= 6; ++tau) {
    EXPECT_TRUE(autocorrelation(m, tau, FiniteField(2)).is_minus_one()) << tau;
  }
}

TEST(Autocorrelation, FieldMismatch) {
  EXPECT_THROW(autocorrelation(cyc("(0011)"), 1, FiniteField(3)), std::invalid_argument);
  EXPECT_THROW(autocorrelation(cyc(kU4), 1, FiniteField(2)), std::invalid_argument);
}

TEST(R3, LiftsOfU4Fail) {
  auto v1 = check_r3(cyc(kLift1));
  EXPECT_FALSE(v1.holds);
  EXPECT_EQ(v1.failing_tau, (std::vector<std::size_t>{4, 5, 7, 8, 10, 11}));
  auto v2 = check_r3(cyc(kLift2));
  EXPECT_FALSE(v2.holds);
  EXPECT_EQ(v2.failing_tau, (std::vector<std::size_t>{4, 6, 7, 8, 9, 11}));
}

TEST(R3, MSequenceCompletionHolds) {
  auto v = check_r3(cyc("(00010111)"));
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(v.failing_tau.empty());
}

TEST(R3, LiftsOfBinaryEightFail) {
  for (std::size_t i = 0; i < kBinary8.size(); ++i) {
    auto lifts = enumerate_debruijn_lifts(binary8(i), 8, 3);
    ASSERT_FALSE(lifts.cycles.empty());
    for (const auto& w : lifts.cycles) EXPECT_FALSE(check_r3(w, true).holds) << i;
  }
}

TEST(R3, LiftsOfAlphabetFourFail) {
  auto lifts = enumerate_debruijn_lifts(cyc(kAlphMult, 4), 4, 3);
  ASSERT_FALSE(lifts.cycles.empty());
  for (const auto& w : lifts.cycles) EXPECT_FALSE(check_r3(w, field_of_order(4), true).holds);
}

TEST(Agreements, Examples) {
  EXPECT_EQ(agreements(cyc("(0011)"), 0), (Agreements{4, 0}));
  EXPECT_EQ(agreements(cyc("(01)"), 1), (Agreements{0, 2}));
  auto h1 = puncture(cyc(kLift1));
  auto a = agreements(h1, -8);
  EXPECT_EQ(a, (Agreements{9, 6}));
  EXPECT_GE(a.agree, a.disagree);
}

TEST(Agreements, ImpliesR3Failure) {
  for (auto w : {kLift1, kLift2}) {
    auto h = puncture(cyc(w));
    auto v = check_r3(cyc(w));
    for (std::size_t tau = 1; tau < h.size(); ++tau) {
      auto a = agreements(h, static_cast<std::ptrdiff_t>(tau));
      if (a.agree >= a.disagree) {
        EXPECT_FALSE(v.holds);
        EXPECT_TRUE(std::find(v.failing_tau.begin(), v.failing_tau.end(), tau) != v.failing_tau.end());
      }
    }
  }
}

TEST(Field, ExtensionTraceIsPrimeField) {
  for (std::uint32_t qn : {4u, 8u, 9u, 16u, 25u, 27u}) {
    auto f = field_of_order(qn);
    EXPECT_EQ(f.order(), qn);
    for (std::uint32_t x = 0; x < qn; ++x) EXPECT_LT(f.trace(x), f.characteristic());
  }
  EXPECT_THROW(FiniteField(2, {0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(FiniteField(4), std::invalid_argument);
  EXPECT_THROW(field_of_order(6), std::invalid_argument);
}

TEST(Field, TraceIsBalanced) {
  // each value of the trace is taken q/p times
  for (std::uint32_t qn : {4u, 8u, 9u, 27u}) {
    auto f = field_of_order(qn);
    std::vector<std::uint32_t> hits(f.characteristic(), 0);
    for (std::uint32_t x = 0; x < qn; ++x) ++hits[f.trace(x)];
    for (auto h : hits) EXPECT_EQ(h, qn / f.characteristic());
  }
}

TEST(CycloIntTest, MinusOneRepresentations) {
  EXPECT_TRUE(CycloInt({0, 1, 1}).is_minus_one());
  EXPECT_TRUE(CycloInt({-1, 0, 0}).is_minus_one());
  EXPECT_FALSE(CycloInt({0, 1, 0}).is_minus_one());
  EXPECT_EQ(CycloInt({2, 3, 3}).as_integer(), std::optional<std::int64_t>(-1));
  EXPECT_FALSE(CycloInt({2, 3, 4}).as_integer());
  EXPECT_EQ((CycloInt({1, 0}) + CycloInt({0, 2})).as_integer(), std::optional<std::int64_t>(-1));
}
