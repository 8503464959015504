#include <gtest/gtest.h>

#include <random>

#include "agt/gentorsion.hpp"
#include "agt/lfp.hpp"
#include "test_util.hpp"

using namespace agt;
using namespace agt::testing;

namespace {

Word W(const char* s) { return Word::parse(s); }

using Kind = CompStatus::Kind;

// Syllable-by-syllable left-first product with provenance, written from the
// pairwise definitions only.
struct OracleStatus {
  Kind kind = Kind::Unaltered;
  std::optional<CompRef> partner;
  std::size_t step = 0;
};

struct Oracle {
  std::vector<std::vector<OracleStatus>> st;
  Word product;

  explicit Oracle(const std::vector<Word>& gs) {
    struct Cell {
      Syllable s;
      std::optional<CompRef> origin;
    };
    std::vector<Cell> P;
    for (std::size_t t = 0; t < gs.size(); ++t) {
      st.emplace_back(gs[t].length());
      std::size_t k = 0;
      const auto& syl = gs[t].syllables();
      const std::size_t step = t + 1;
      while (k < syl.size() && !P.empty() && P.back().s.gen == syl[k].gen) {
        const CompRef me{step, k + 1};
        auto& back = P.back();
        const auto sum = back.s.exp + syl[k].exp;
        if (sum == 0) {
          if (back.origin) st[back.origin->first - 1][back.origin->second - 1] = {Kind::Canceled, me, step};
          st[t][k] = {Kind::Canceled, back.origin, step};
          P.pop_back();
          ++k;
        } else {
          if (back.origin) st[back.origin->first - 1][back.origin->second - 1] = {Kind::Merged, me, step};
          st[t][k] = {Kind::Merged, back.origin, step};
          back.s.exp = sum;
          back.origin.reset();
          ++k;
          break;
        }
      }
      for (; k < syl.size(); ++k) P.push_back({syl[k], CompRef{step, k + 1}});
    }
    std::vector<Syllable> out;
    for (const auto& c : P) out.push_back(c.s);
    product = Word::from_syllables(out);
  }
};

}  // namespace

TEST(Lfp, WorkedExample) {
  const auto t = LfpTrace::left({W("a"), W("a^-1 b"), W("b^-1 a")});
  EXPECT_EQ(t.product(), W("a"));
  EXPECT_EQ(t.status(1, 1).kind, Kind::Canceled);
  EXPECT_TRUE(t.cancels({1, 1}, {2, 1}));
  EXPECT_TRUE(t.cancels({2, 2}, {3, 1}));
  EXPECT_FALSE(t.is_unaltered(1, 1));
  EXPECT_TRUE(t.is_unaltered(3, 2));
  ASSERT_EQ(t.final_origins().size(), 1u);
  EXPECT_EQ(t.final_origins()[0], (CompRef{3, 2}));
  EXPECT_EQ(t.cancellations().size(), 2u);
  EXPECT_TRUE(t.consistent());
  EXPECT_TRUE(check_pair_cancellation(t).empty());
}

TEST(Lfp, MergeStatus) {
  const auto t = LfpTrace::left({W("a b^2"), W("b a")});
  EXPECT_EQ(t.product(), W("a b^3 a"));
  EXPECT_EQ(t.status(1, 2).kind, Kind::Merged);
  EXPECT_EQ(t.status(2, 1).kind, Kind::Merged);
  EXPECT_TRUE(t.is_unaltered(1, 1));
  EXPECT_TRUE(t.is_unaltered(2, 2));
  EXPECT_EQ(t.final_origins()[1], std::nullopt);
}

TEST(Lfp, ReducedInputsAreUnaltered) {
  const std::vector<Word> gs{W("a b"), W("a^2"), W("b^-1 a")};
  const auto t = LfpTrace::left(gs);
  for (std::size_t i = 1; i <= gs.size(); ++i)
    for (std::size_t p = 1; p <= gs[i - 1].length(); ++p) EXPECT_TRUE(t.is_unaltered(i, p));
  EXPECT_TRUE(t.cancellations().empty());
}

TEST(Lfp, PartialsAndRightFirst) {
  const std::vector<Word> gs{W("a b"), W("b^-1 a^-1 b"), W("a")};
  const auto l = LfpTrace::left(gs), r = LfpTrace::right(gs);
  ASSERT_EQ(l.partials().size(), 3u);
  EXPECT_EQ(l.partials()[0], gs[0]);
  EXPECT_EQ(l.partials()[1], W("b"));
  EXPECT_EQ(r.partials()[0], gs[2]);
  EXPECT_EQ(r.product(), l.product());
}

TEST(Lfp, MatchesOracle) {
  std::mt19937_64 rng(31);
  const auto al = gens({"a", "b"});
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<Word> gs;
    for (int n = 1 + rng() % 5; n > 0; --n) {
      auto w = random_word(rng, al, 5);
      // Bias towards cancellation with the running product.
      if (!gs.empty() && (rng() & 1)) w = gs.back().suffix(rng() % (gs.back().length() + 1)).inverse() * w;
      gs.push_back(w);
    }
    const auto t = LfpTrace::left(gs);
    const Oracle o(gs);
    ASSERT_EQ(t.product(), o.product);
    for (std::size_t i = 0; i < gs.size(); ++i)
      for (std::size_t p = 0; p < gs[i].length(); ++p) {
        const auto& a = t.status(i + 1, p + 1);
        const auto& b = o.st[i][p];
        ASSERT_EQ(a.kind, b.kind) << i << "," << p;
        ASSERT_EQ(a.step, b.step);
        ASSERT_EQ(a.partner, b.partner);
      }
    ASSERT_TRUE(t.consistent());
    ASSERT_TRUE(check_pair_cancellation(t).empty());
  }
}

TEST(Lfp, RightFirstProductAgrees) {
  std::mt19937_64 rng(37);
  const auto al = gens({"a", "b", "c"});
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Word> gs;
    Word direct;
    for (int n = 1 + rng() % 5; n > 0; --n) {
      gs.push_back(random_word(rng, al, 4));
      direct *= gs.back();
    }
    const auto r = LfpTrace::right(gs);
    ASSERT_EQ(r.product(), direct);
    ASSERT_TRUE(r.consistent());
  }
}

TEST(Lfp, SuitesAreClean) {
  for (const char* name : {"lfp_multiplicativity", "lfp_restriction", "lfp_pair_cancellation"}) {
    const auto r = run_suite(name, 300, 7);
    EXPECT_TRUE(r.violations.empty()) << name;
  }
}
