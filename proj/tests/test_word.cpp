#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "agt/casestudy.hpp"
#include "agt/word.hpp"
#include "test_util.hpp"

using namespace agt;
using namespace agt::testing;

namespace {

Word W(const char* s) { return Word::parse(s); }

// Determinantal divisors: d_k = gcd of all k x k minors; invariant factors d_k / d_{k-1}.
BigInt det(IntMatrix m) {
  const std::size_t n = m.size();
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return 0;
    if (p != k) std::swap(m[p], m[k]), sign = -sign;
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (pick[i]) s.push_back(i);
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

std::vector<BigInt> minor_invariants(const IntMatrix& m) {
  const std::size_t r = m.size(), c = r ? m[0].size() : 0;
  std::vector<BigInt> d{1};
  for (std::size_t k = 1; k <= std::min(r, c); ++k) {
    std::vector<std::vector<std::size_t>> rows, cols;
    subsets(r, k, rows);
    subsets(c, k, cols);
    BigInt g = 0;
    for (const auto& rs : rows)
      for (const auto& cs : cols) {
        IntMatrix sub(k, std::vector<BigInt>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[rs[i]][cs[j]];
        g = gcd(g, det(sub));
      }
    if (g == 0) break;
    d.push_back(g);
  }
  std::vector<BigInt> out;
  for (std::size_t k = 1; k < d.size(); ++k) out.push_back(d[k] / d[k - 1]);
  return out;
}

IntMatrix exponent_matrix(const Presentation& p) {
  IntMatrix m;
  for (const auto& r : p.relators) {
    std::vector<BigInt> row;
    for (const auto& g : p.generators) row.emplace_back(weight(r, g));
    m.push_back(row);
  }
  return m;
}

}  // namespace

TEST(Reduce, InversePairVanishes) { EXPECT_TRUE(W("a a^-1").is_identity()); }

TEST(Reduce, InnerCancellation) { EXPECT_EQ(W("a b b^-1 a"), W("a^2")); }

TEST(Reduce, IdentityText) {
  EXPECT_TRUE(W("1").is_identity());
  EXPECT_TRUE(W("").is_identity());
}

TEST(Reduce, UnknownGeneratorRejected) {
  const auto ab = gens({"a", "b"});
  EXPECT_THROW(Word::parse("a c", &ab), ParseError);
  EXPECT_THROW(reduce({{Gen("c"), 1}}, &ab), ParseError);
}

TEST(Reduce, BetaExpansionIsFreeIdentity) {
  // a_2^{(a_1 a_3)^-1} a_1^{(a_0 a_2)^-1} a_0^{a_1} a_3 against the conjugated relators.
  const Word a0(Gen("a", 0)), a1(Gen("a", 1)), a2(Gen("a", 2)), a3(Gen("a", 3));
  const Word displayed = a2.conj((a1 * a3).inverse()) * a1.conj((a0 * a2).inverse()) * a0.conj(a1) * a3;
  const auto w = gamma_beta_witness();
  EXPECT_TRUE((ncl_product(gamma_beta_relators(), w) * displayed.inverse()).is_identity());
}

TEST(Reduce, AgreesWithStackReductionAndIsIdempotent) {
  std::mt19937_64 rng(11);
  const auto al = gens({"a", "b", "c"});
  for (int t = 0; t < 100000; ++t) {
    const auto raw = random_letters(rng, al, 12);
    const Word w = reduce(raw);
    ASSERT_TRUE(same_letters(w.letters(), naive_reduce(raw)));
    ASSERT_EQ(reduce(w.letters()), w);
    ASSERT_LE(w.letter_len(), static_cast<std::int64_t>(raw.size()));
    ASSERT_TRUE((w * w.inverse()).is_identity());
  }
}

TEST(Syllables, AlreadyAlternating) {
  const Word w = W("a^3 b^-2");
  const auto s = syllables(w);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], (Syllable{Gen("a"), 3}));
  EXPECT_EQ(s[1], (Syllable{Gen("b"), -2}));
  EXPECT_EQ(w.length(), 2u);
  EXPECT_EQ(w.letter_len(), 5);
}

TEST(Syllables, EmptyWord) { EXPECT_TRUE(syllables(Word()).empty()); }

TEST(Syllables, StrictAlphabet) {
  const auto ab = gens({"a", "b"});
  EXPECT_THROW(syllables(W("a c"), &ab), ParseError);
}

TEST(Syllables, GeneratorsHaveLengthTwoS) {
  const auto g = build_nonlo(sample_exponents(10, 8, 0));
  for (const auto& a : g.alpha) EXPECT_EQ(a.length(), 20u);
}

TEST(Syllables, RoundTrip) {
  std::mt19937_64 rng(3);
  const auto ab = gens({"a", "b"});
  for (int t = 0; t < 2000; ++t) {
    const Word w = random_word(rng, ab, 20);
    EXPECT_EQ(flatten(syllables(w, &ab)), w);
    EXPECT_EQ(syllables(flatten(w.syllables())), w.syllables());
  }
}

TEST(Blocks, PrefixSuffixRange) {
  const Word w = W("a^2 b a^-1 b^3");
  EXPECT_EQ(w.block(2), W("b"));
  EXPECT_EQ(w.rblock(1), W("b^3"));
  EXPECT_EQ(w.prefix(2), W("a^2 b"));
  EXPECT_EQ(w.suffix(2), W("a^-1 b^3"));
  EXPECT_EQ(w.range(2, 3), W("b a^-1"));
  EXPECT_EQ(w.prefix(2) * w.suffix(2), w);
}

TEST(Parse, IndexedAndText) {
  const Word w = W("a[1]^-2 b a[0]");
  EXPECT_EQ(w.length(), 3u);
  EXPECT_EQ(Word::parse(w.str()), w);
  EXPECT_EQ(w.syl(0).gen, Gen("a", 1));
  EXPECT_THROW(W("a^"), ParseError);
}

TEST(SyllableCancellation, CountsFullPairs) {
  EXPECT_EQ(syllable_cancellation(W("a b^2"), W("b^-2 a^-1 b")), 2u);
  EXPECT_EQ(syllable_cancellation(W("a b^2"), W("b^-1 a")), 0u);
  EXPECT_EQ(syllable_cancellation(W("a"), W("b")), 0u);
}

TEST(Weight, LongitudeIsACommutatorProduct) {
  const Word lambda = W("y x^-1 y^-1 x^2 y^-1 x^-1 y");
  EXPECT_EQ(weight(lambda, Gen("x")), 0);
  EXPECT_EQ(weight(lambda, Gen("y")), 0);
}

TEST(Weight, ExponentSum) { EXPECT_EQ(weight(W("a[0]^3 a[1]^-1"), Gen("a", 0)), 3); }

TEST(Weight, InSubgroupBasis) {
  HomSpec basis;
  basis.set(Gen("v", 0), W("a[0]"));
  basis.set(Gen("v", 1), W("a[2] a[1]^-1"));
  EXPECT_EQ(weight(W("a[2] a[1]^-1"), Gen("v", 1), basis), 1);
  EXPECT_EQ(weight(W("a[2] a[1]^-1"), Gen("v", 0), basis), 0);
  EXPECT_THROW(weight(W("a[1]"), Gen("v", 1), basis), NotMember);
}

TEST(Weight, Homomorphism) {
  std::mt19937_64 rng(5);
  const auto al = gens({"a", "b"});
  for (int t = 0; t < 5000; ++t) {
    const Word u = random_word(rng, al, 10), v = random_word(rng, al, 10);
    for (const auto& g : al) ASSERT_EQ(weight(u * v, g), weight(u, g) + weight(v, g));
  }
}

TEST(ApplyHom, Identity) {
  const auto ab = gens({"a", "b"});
  EXPECT_EQ(apply_hom(HomSpec::identity(ab), W("a b")), W("a b"));
}

TEST(ApplyHom, IndexedExpansion) {
  EXPECT_EQ(expand_indexed(W("a[1]")), W("b^-1 a b"));
  EXPECT_EQ(expand_indexed(W("a[-2]")), W("b^2 a b^-2"));
}

TEST(ApplyHom, PhiSendsAlphaToBeta) {
  const auto g = build_nonlo(sample_exponents(10, 8, 0));
  HomSpec Phi;
  Phi.set(Gen("a"), W("c"));
  Phi.set(Gen("b"), W("d"));
  for (std::size_t i = 0; i < g.alpha.size(); ++i) EXPECT_EQ(apply_hom(Phi, g.alpha[i]), g.beta[i]);
}

TEST(ApplyHom, OutsideDomainThrows) {
  HomSpec h;
  h.set(Gen("a"), W("b"));
  EXPECT_ANY_THROW(apply_hom(h, W("c")));
}

TEST(ApplyHom, RespectsProducts) {
  std::mt19937_64 rng(9);
  const auto al = gens({"a", "b"});
  HomSpec h;
  h.set(Gen("a"), W("a b^2"));
  h.set(Gen("b"), W("b a^-1 b"));
  for (int t = 0; t < 5000; ++t) {
    const Word u = random_word(rng, al, 8), v = random_word(rng, al, 8);
    ASSERT_EQ(apply_hom(h, u * v), apply_hom(h, u) * apply_hom(h, v));
  }
}

TEST(Abelianize, KnotGroupIsInfiniteCyclic) {
  const auto p = knot_presentation(1);
  const auto a = abelianize_snf(p);
  EXPECT_EQ(a.free_rank, 1u);
  EXPECT_TRUE(a.torsion.empty());
  EXPECT_EQ(a.invariant_factors, minor_invariants(exponent_matrix(p)));
}

TEST(Abelianize, GluedManifoldIsPerfect) {
  const auto a = abelianize_snf(build_w_presentation());
  EXPECT_TRUE(a.trivial());
  EXPECT_EQ(a.free_rank, 0u);
  for (const auto& f : a.invariant_factors) EXPECT_EQ(f, 1);
}

TEST(Abelianize, NoRelators) {
  Presentation p{gens({"a", "b"}), {}};
  EXPECT_EQ(abelianize_snf(p).free_rank, 2u);
}

TEST(Abelianize, TorsionAgainstMinorOracle) {
  Presentation p{gens({"a", "b", "c"}), {W("a^4 b^6"), W("b^6 c^10"), W("a^2 c^-4")}};
  const auto a = abelianize_snf(p);
  EXPECT_EQ(a.invariant_factors, minor_invariants(exponent_matrix(p)));
}

TEST(Abelianize, InvariantUnderTietzeShuffles) {
  std::mt19937_64 rng(21);
  const auto al = gens({"a", "b", "c"});
  for (int t = 0; t < 200; ++t) {
    Presentation p{al, {}};
    std::uniform_int_distribution<int> nrel(1, 3);
    for (int k = nrel(rng); k > 0; --k) p.relators.push_back(random_word(rng, al, 8));
    const auto base = abelianize_snf(p);
    ASSERT_EQ(base.invariant_factors, minor_invariants(exponent_matrix(p)));
    Presentation q = p;
    std::uniform_int_distribution<std::size_t> pick(0, q.relators.size() - 1);
    std::uniform_int_distribution<int> op(0, 3);
    for (int s = 0; s < 10; ++s) {
      const std::size_t i = pick(rng), j = pick(rng);
      switch (op(rng)) {
        case 0:
          if (i != j) q.relators[i] = q.relators[i] * q.relators[j];
          break;
        case 1:
          q.relators[i] = q.relators[i].inverse();
          break;
        case 2:
          q.relators[i] = q.relators[i].conj(random_word(rng, al, 4));
          break;
        default:
          std::swap(q.relators[i], q.relators[j]);
      }
    }
    const auto shuffled = abelianize_snf(q);
    ASSERT_EQ(shuffled.invariant_factors, base.invariant_factors);
    ASSERT_EQ(shuffled.free_rank, base.free_rank);
  }
}

TEST(Smith, LargeEntriesStayExact) {
  IntMatrix m{{BigInt("123456789012345678901234567890"), 0}, {0, BigInt("98765432109876543210")}};
  const auto d = smith_diagonal(m);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0] * d[1], BigInt("123456789012345678901234567890") * BigInt("98765432109876543210"));
  EXPECT_EQ(d[1] % d[0], 0);
}
