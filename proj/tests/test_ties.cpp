#include <gtest/gtest.h>

#include <random>
#include <set>

#include "msum/ties.hpp"

using namespace msum;

static TieVec bits(const char* s) { return TieVec::from_string(s); }

TEST(OrSum, Examples) {
  EXPECT_EQ(or_sum(bits("101"), bits("011")), bits("111"));
  EXPECT_EQ(or_sum(bits("101"), bits("000")), bits("101"));
  EXPECT_EQ(or_sum(bits("101"), bits("101")), bits("101"));
  EXPECT_THROW(or_sum(bits("10"), bits("101")), std::invalid_argument);
}

TEST(OrSum, MonoidLaws) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const TieVec a = TieVec::from_mask(9, rng()), b = TieVec::from_mask(9, rng()), c = TieVec::from_mask(9, rng());
    EXPECT_EQ(or_sum(a, b), or_sum(b, a));
    EXPECT_EQ(or_sum(or_sum(a, b), c), or_sum(a, or_sum(b, c)));
    EXPECT_EQ(or_sum(a, a), a);
  }
}

TEST(TieVec, WideVectors) {
  TieVec v(300);
  v.set(0);
  v.set(299);
  v.set(130);
  EXPECT_EQ(v.count(), 3U);
  EXPECT_EQ(v.members(), (std::vector<std::size_t>{0, 130, 299}));
  EXPECT_EQ(TieVec::from_string(v.to_string()), v);
  EXPECT_THROW(TieVec(TieVec::kCapacity + 1), std::length_error);
}

TEST(CondPlus, Examples) {
  const TieCond zero = empty_cond(2, 1);
  EXPECT_EQ(cond_plus_a(zero, 0, bits("00")), zero);
  const TieCond two{bits("10"), bits("01")};
  EXPECT_EQ(cond_plus_a(two, 1, bits("10"))[0], bits("10"));
  EXPECT_EQ(cond_plus_a(two, 0, bits("01")), (TieCond{bits("11"), bits("01")}));
  EXPECT_THROW(cond_plus_a(two, 2, bits("01")), std::out_of_range);
}

TEST(Encode, Condition) {
  const Formula f = parse("<0>p0");
  Closure c(f);
  EXPECT_EQ(encode_condition(c, {}, 1), empty_cond(2, 1));
  EXPECT_EQ(encode_condition(c, {{Formula::var(0)}}, 1)[0], bits("01"));
  EXPECT_EQ(encode_condition(c, {{Formula::var(0), Formula::var(7)}}, 1)[0], bits("01"));
}

TEST(Encode, DecodeBijection) {
  Closure c(parse("<0>(p0 -> p1) -> p1"));
  EXPECT_TRUE(decode(c, TieVec(c.size())).empty());
  EXPECT_EQ(decode(c, TieVec::full(c.size())), c.chain());
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << c.size()); ++m) {
    const TieVec v = TieVec::from_mask(c.size(), m);
    EXPECT_EQ(encode_set(c, decode(c, v)), v);
  }
}

TEST(Covers, SmallExamples) {
  auto one = enumerate_covers(bits("0"), 1);
  ASSERT_EQ(one.size(), 1U);
  EXPECT_EQ(one[0].u, bits("0"));
  EXPECT_EQ(one[0].parts, std::vector<TieVec>{bits("0")});

  std::set<std::pair<std::string, std::string>> got;
  for (const auto& c : enumerate_covers(bits("1"), 1)) got.emplace(c.u.to_string(), c.parts[0].to_string());
  EXPECT_EQ(got, (std::set<std::pair<std::string, std::string>>{{"1", "0"}, {"1", "1"}, {"0", "1"}}));
}

TEST(Covers, CountFormula) {
  for (unsigned k = 1; k <= 3; ++k)
    for (std::size_t m = 0; m <= 4; ++m) {
      TieVec v(6);
      for (std::size_t i = 0; i < m; ++i) v.set(i + 1);
      std::size_t expect = 1;
      for (std::size_t i = 0; i < m; ++i) expect *= (std::size_t{1} << (k + 1)) - 1;
      EXPECT_EQ(enumerate_covers(v, k).size(), expect) << "k=" << k << " m=" << m;
    }
}

// Naive filtering over all (k+1)-tuples of vectors of width n.
TEST(Covers, AgainstNaiveFiltering) {
  for (std::size_t n = 1; n <= 3; ++n)
    for (unsigned k = 1; k <= 2; ++k)
      for (std::uint64_t vm = 0; vm < (1U << n); ++vm) {
        const TieVec v = TieVec::from_mask(n, vm);
        std::set<std::vector<std::uint64_t>> naive;
        const std::uint64_t tuples = std::uint64_t{1} << (n * (k + 1));
        for (std::uint64_t t = 0; t < tuples; ++t) {
          std::vector<std::uint64_t> parts;
          std::uint64_t acc = 0;
          for (unsigned s = 0; s <= k; ++s) {
            parts.push_back((t >> (s * n)) & ((1U << n) - 1));
            acc |= parts.back();
          }
          if (acc == vm) naive.insert(parts);
        }
        std::set<std::vector<std::uint64_t>> got;
        std::size_t listed = 0;
        for (const auto& c : enumerate_covers(v, k)) {
          std::vector<std::uint64_t> parts{c.u.low_word()};
          for (const auto& p : c.parts) parts.push_back(p.low_word());
          got.insert(parts);
          ++listed;
        }
        EXPECT_EQ(listed, got.size());
        EXPECT_EQ(got, naive);
      }
}

TEST(Covers, EarlyExit) {
  std::size_t seen = 0;
  EXPECT_TRUE(for_each_cover(bits("111"), 2, [&](const TieVec&, const std::vector<TieVec>&) { return ++seen == 5; }));
  EXPECT_EQ(seen, 5U);
}

TEST(Packing, RoundTrip) {
  const TieVec mask = bits("0110100101");
  const Packing pk(mask);
  ASSERT_TRUE(pk.fits());
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    const TieVec v = TieVec::from_mask(10, rng()) & mask;
    EXPECT_EQ(pk.unpack(pk.pack(v)), v);
  }
}

// Unions of at most b members, by explicit subset enumeration.
TEST(WordUnions, AgainstSubsets) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 60; ++t) {
    const std::size_t nbits = 3 + t % 26;
    std::vector<std::uint64_t> fam;
    for (int i = 0; i < 6; ++i) fam.push_back(rng() & ((std::uint64_t{1} << nbits) - 1) & rng());
    for (unsigned b = 1; b <= 4; ++b) {
      std::set<std::uint64_t> expect;
      for (unsigned m = 1; m < (1U << fam.size()); ++m) {
        if (static_cast<unsigned>(__builtin_popcount(m)) > b) continue;
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < fam.size(); ++i)
          if (m >> i & 1U) acc |= fam[i];
        expect.insert(acc);
      }
      auto got = word_unions(fam, b, nbits);
      EXPECT_EQ(std::set<std::uint64_t>(got.begin(), got.end()), expect) << "b=" << b << " nbits=" << nbits;
    }
  }
}
