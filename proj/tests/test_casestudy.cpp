#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <set>

#include "agt/casestudy.hpp"
#include "test_util.hpp"

using namespace agt;
using namespace agt::testing;

namespace {

Word W(const char* s) { return Word::parse(s); }

const NonLoGroup& nonlo() {
  static const NonLoGroup g = build_nonlo(sample_exponents(10, 8, 0));
  return g;
}

// Condition (A) counted straight from its definition.
std::pair<std::size_t, std::size_t> distinct_counts(const ExponentMatrix& e) {
  std::set<std::int64_t> A, B;
  for (int i = 0; i < e.m; ++i)
    for (int j = 0; j < e.s; ++j) {
      A.insert(std::llabs(e.at(0, i, j)));
      B.insert(std::llabs(e.at(1, i, j)));
    }
  for (int i = 0; i < e.m; ++i)
    for (int i2 = i + 1; i2 < e.m; ++i2) {
      A.insert(std::llabs(e.at(0, i, 0) - e.at(0, i2, 0)));
      B.insert(std::llabs(e.at(1, i, e.s - 1) - e.at(1, i2, e.s - 1)));
    }
  return {A.size(), B.size()};
}

}  // namespace

TEST(Manifold, KnotGroupAbelianizesToZ) {
  const auto p = knot_presentation(1);
  EXPECT_EQ(p.generators.size(), 2u);
  ASSERT_EQ(p.relators.size(), 1u);
  const auto ab = abelianize_snf(p);
  EXPECT_EQ(ab.free_rank, 1u);
  EXPECT_TRUE(ab.torsion.empty());
}

TEST(Manifold, GluedGroupIsPerfect) {
  const auto p = build_w_presentation();
  EXPECT_EQ(p.generators.size(), 4u);
  EXPECT_EQ(p.relators.size(), 4u);
  EXPECT_TRUE(abelianize_snf(p).trivial());
}

TEST(Manifold, LongitudeIsAProductOfCommutators) {
  // The longitude has exponent sum zero in each generator.
  const auto l = knot_longitude(1);
  const auto p = knot_presentation(1);
  for (const auto& g : p.generators) EXPECT_EQ(weight(l, g), 0);
  EXPECT_EQ(knot_meridian(1), Word(p.generators[0]));
}

TEST(OneRelator, EdgeGroupsHaveRankTwo) {
  const auto g = build_onerelator_amalgam();
  EXPECT_EQ(g.C->rank(), 2u);
  EXPECT_EQ(g.D->rank(), 2u);
  EXPECT_EQ(g.c_gens.size(), 2u);
  EXPECT_EQ(g.c_gens[0], W("a"));
  EXPECT_EQ(g.d_gens[0], W("c^-1"));
  // The a-relation identifies a with c^-1.
  const auto& G = g.group;
  EXPECT_TRUE(G.equal(G.parse("a"), G.parse("c^-1")));
}

TEST(OneRelator, PresentationAbelianizes) {
  // The relator has exponent sums (2, 0, 0) in (a, b, d): Z^2 + Z/2.
  const auto p = onerelator_presentation();
  ASSERT_EQ(p.relators.size(), 1u);
  EXPECT_EQ(weight(p.relators[0], Gen("a")), 2);
  const auto ab = abelianize_snf(p);
  EXPECT_EQ(ab.free_rank, 2u);
  ASSERT_EQ(ab.torsion.size(), 1u);
  EXPECT_EQ(ab.torsion[0], 2);
}

TEST(OneRelator, IndexedRewriting) {
  EXPECT_EQ(expand_indexed(onerelator_v0()), W("a"));
  EXPECT_EQ(expand_indexed(onerelator_v1()), W("b^-2 a b a^-1 b"));
  std::mt19937_64 rng(3);
  const auto al = indexed("a", -2, 2);
  for (int t = 0; t < 500; ++t) {
    const auto w = random_word(rng, al, 10);
    ASSERT_EQ(collapse_indexed(expand_indexed(w)), w);
  }
  EXPECT_THROW(collapse_indexed(W("b")), std::invalid_argument);
}

TEST(OneRelator, GammaRelatorShifts) {
  const auto r = gamma_relator();
  EXPECT_EQ(gamma_relator(2), shift_indices(r, 2));
  EXPECT_EQ(shift_indices(shift_indices(r, 3), -3), r);
}

TEST(Exponents, ConditionACardinality) {
  const auto e = sample_exponents(10, 8, 0);
  const auto chk = validate_exponents(e);
  EXPECT_TRUE(chk.ok);
  EXPECT_EQ(chk.expected, 108u);
  EXPECT_EQ(chk.card_a, 108u);
  EXPECT_EQ(chk.card_b, 108u);
  const auto [a, b] = distinct_counts(e);
  EXPECT_EQ(a, 108u);
  EXPECT_EQ(b, 108u);
}

TEST(Exponents, LargerParameters) {
  for (auto [s, m] : {std::pair{10, 9}, {12, 8}, {11, 12}}) {
    const auto e = sample_exponents(s, m, 5);
    const auto want = static_cast<std::size_t>(s * m + m * (m - 1) / 2);
    EXPECT_TRUE(validate_exponents(e).ok);
    EXPECT_EQ(distinct_counts(e), std::make_pair(want, want));
  }
}

TEST(Exponents, SignRows) {
  const auto e = sample_exponents(10, 8, 0);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < e.s; ++j) {
      EXPECT_GT(e.at(0, i, j), 0);
      if (i < 4)
        EXPECT_GT(e.at(1, i, j), 0);
      else
        EXPECT_LT(e.at(1, i, j), 0);
    }
}

TEST(Exponents, TamperingIsRejected) {
  auto e = sample_exponents(10, 8, 0);
  e.k[0][2][3] = e.k[0][1][5];
  EXPECT_FALSE(validate_exponents(e).ok);
  EXPECT_THROW(build_nonlo(e), std::invalid_argument);

  auto f = sample_exponents(10, 8, 0);
  f.k[1][6][2] = -f.k[1][6][2];
  EXPECT_FALSE(validate_exponents(f).ok);
}

TEST(NonLo, Construction) {
  const auto& g = nonlo();
  for (const auto& a : g.alpha) EXPECT_EQ(a.length(), 20u);
  EXPECT_EQ(g.C->rank(), 8u);
  EXPECT_EQ(g.phi_alpha[2], g.beta[4]);
  EXPECT_EQ(g.phi_alpha[1], g.beta[1].inverse());
  EXPECT_EQ(g.basis_pm().size(), 16u);
}

TEST(NonLo, Witnesses) {
  const auto ws = verify_nonlo_witnesses(nonlo());
  ASSERT_EQ(ws.size(), 8u);
  for (const auto& w : ws) {
    EXPECT_TRUE(w.identity) << w.index;
    EXPECT_TRUE(w.signs) << w.index << ": " << w.letters;
  }
  EXPECT_EQ(ws[0].expected, "a b c^-1 d^-1");
  EXPECT_EQ(ws[5].expected, "a b^-1 c d");
}

TEST(NonLo, PerturbedPairing) {
  const auto e = sample_exponents(10, 8, 0);
  auto check = [&](const Pairing& p) {
    bool all = true;
    for (const auto& w : verify_nonlo_witnesses(build_nonlo(e, p))) {
      EXPECT_TRUE(w.identity);
      all &= w.signs;
    }
    return all;
  };
  // Rows 1 and 2 share a sign pattern, so permuting the targets alone is harmless.
  auto p = Pairing::standard(8);
  std::swap(p.perm[0], p.perm[1]);
  EXPECT_TRUE(check(p));
  // Exchanging the images of alpha_1 and alpha_2 with their exponents breaks it.
  auto q = Pairing::standard(8);
  std::swap(q.perm[0], q.perm[1]);
  std::swap(q.sign[0], q.sign[1]);
  EXPECT_FALSE(check(q));
}

TEST(NonLo, SmallCancellation) {
  const auto r = small_cancellation_report(nonlo(), 300, 1);
  EXPECT_TRUE(r.ok()) << (r.failures.empty() ? "" : r.failures.front());
  EXPECT_EQ(r.pairs, 240u);
  EXPECT_GE(r.min_pair_length, 39u);
  EXPECT_GT(r.products, 0u);
}

TEST(NonLo, ThreeFoldProducts) {
  std::mt19937_64 rng(9);
  const auto pm = nonlo().basis_pm();
  for (int t = 0; t < 2000; ++t) {
    const auto& u1 = pm[rng() % 16];
    const auto& u2 = pm[rng() % 16];
    const auto& u3 = pm[rng() % 16];
    if ((u1 * u2).is_identity() || (u2 * u3).is_identity()) continue;
    const auto p = u1 * u2 * u3;
    ASSERT_GE(p.length(), 58u);
    ASSERT_EQ(p.prefix(19), u1.prefix(19));
  }
}

TEST(Prefix, ComponentCase) {
  const auto& g = nonlo();
  const auto& a1 = g.alpha[0];
  auto syl = [](const Word& w, std::size_t i) { return Word::from_syllables({w.syl(i)}); };
  const auto r1 = prefix_of(g, syl(a1, 0));
  EXPECT_EQ(r1.kind, PrefixResult::Case::Component);
  EXPECT_TRUE(r1.p.empty());
  for (std::size_t k = 2; k <= 20; ++k) {
    const auto r = prefix_of(g, syl(a1, k - 1));
    EXPECT_EQ(r.p, a1.prefix(k - 1)) << k;
  }
}

TEST(Prefix, MergeCase) {
  const auto& g = nonlo();
  const auto inv1 = g.alpha[0].inverse();
  const auto E = Word::from_syllables({inv1.syl(19)}) * Word::from_syllables({g.alpha[1].syl(0)});
  ASSERT_EQ(E.length(), 1u);
  const auto r = prefix_of(g, E);
  EXPECT_EQ(r.kind, PrefixResult::Case::Merge);
  EXPECT_EQ(r.p, inv1.prefix(19));
  // p(E) E p(E^-1)^-1 lies in C.
  const auto q = prefix_of(g, E.inverse());
  EXPECT_TRUE(g.C->contains(r.p * E * q.p.inverse()));
}

TEST(Prefix, RejectsForeignSyllables) {
  EXPECT_THROW(prefix_of(nonlo(), W("a^100000")), std::invalid_argument);
}

TEST(Simplify, SingleLetterIsAlreadySimplified) {
  const auto& g = nonlo();
  const auto r = c_simplify(g, W("a"));
  EXPECT_TRUE(r.c1.empty());
  EXPECT_TRUE(r.c2.empty());
  EXPECT_EQ(r.alpha, W("a"));
  EXPECT_LT(Lambda(g, W("a")), 10u);
  EXPECT_THROW(c_simplify(g, g.alpha[0]), std::invalid_argument);
}

TEST(Simplify, StripsAGenerator) {
  const auto& g = nonlo();
  const auto x = g.alpha[0] * W("a");
  const auto r = c_simplify(g, x);
  EXPECT_EQ(r.c1 * r.alpha * r.c2, x);
  EXPECT_TRUE(g.C->contains(r.c1));
  EXPECT_TRUE(g.C->contains(r.c2));
  EXPECT_LT(r.alpha.length(), x.length());
  EXPECT_GE(r.steps, 1u);
}

TEST(Simplify, RandomOutputs) {
  const auto& g = nonlo();
  std::mt19937_64 rng(21);
  for (int t = 0; t < 300; ++t) {
    const auto x = random_c_element(g, 2, rng) * random_word(rng, gens({"a", "b"}), 4) * random_c_element(g, 2, rng);
    if (g.C->contains(x)) continue;
    const auto r = c_simplify(g, x);
    ASSERT_EQ(r.c1 * r.alpha * r.c2, x);
    ASSERT_TRUE(g.C->contains(r.c1) && g.C->contains(r.c2));
    ASSERT_LE(r.alpha.length(), x.length());
    ASSERT_LE(Lambda(g, r.alpha), 10u);
    ASSERT_LE(Pcompat(g, r.alpha), 10u);
    ASSERT_TRUE(left_c_simplified(g, r.alpha) && right_c_simplified(g, r.alpha));
  }
}

TEST(StandardForm, NoCancellation) {
  const auto& g = nonlo();
  const auto x = W("b a");
  ASSERT_TRUE(left_c_simplified(g, x));
  const auto f = standard_form(g, g.alpha[0], x);
  EXPECT_TRUE(f.failures.empty()) << f.failures.front();
  EXPECT_EQ(f.k, 0u);
  EXPECT_EQ(f.chi, g.alpha[0]);
  EXPECT_EQ(f.gamma, x);
  EXPECT_EQ(f.lambda * f.mu * f.rho, f.conj);
  EXPECT_EQ(f.conj, g.alpha[0].conj(x));
  EXPECT_TRUE(check_local_property(g, x, f).empty());
}

TEST(StandardForm, SuffixCancellation) {
  const auto& g = nonlo();
  const auto& c = g.alpha[0];
  const auto x = c.suffix(2).inverse() * W("b^5");
  ASSERT_TRUE(left_c_simplified(g, x));
  const auto f = standard_form(g, c, x);
  EXPECT_TRUE(f.failures.empty()) << f.failures.front();
  EXPECT_EQ(f.j, 2u);
  EXPECT_EQ(f.k, std::max(f.i, f.j));
  EXPECT_LE(f.i + f.j, c.length() - 10);
  EXPECT_EQ(f.lambda.length(), f.gamma.length());
  EXPECT_EQ(f.rho.length(), f.gamma.length());
  EXPECT_GE(f.chi.length(), 20u);
  EXPECT_GE(f.mu.length(), 19u);
  EXPECT_EQ(f.lambda * f.mu * f.rho, c.conj(x));
  EXPECT_TRUE(check_local_property(g, x, f).empty());
}

TEST(StandardForm, RejectsBadInputs) {
  const auto& g = nonlo();
  EXPECT_THROW(standard_form(g, Word{}, W("a")), std::invalid_argument);
  EXPECT_THROW(standard_form(g, g.alpha[0], g.alpha[1]), std::invalid_argument);
  EXPECT_THROW(standard_form(g, W("a"), W("b")), std::invalid_argument);
}

TEST(Suites, CaseStudyPropertiesAreClean) {
  for (const char* name : {"lemma_small_cancellation", "lemma_K_beta_h", "lemma_K_alpha_power", "cor_K_alpha_power_h",
                           "prop_two_sided_bound", "prefix_invariant", "lemma_prefix", "c_simplify", "standard_form",
                           "block_cancellation", "claim_a", "rtf_sandwich"}) {
    const auto r = run_suite(name, 100, 7);
    EXPECT_TRUE(r.violations.empty()) << name;
  }
}
