#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "agt/amalgam.hpp"
#include "agt/gentorsion.hpp"
#include "agt/stallings.hpp"
#include "agt/word.hpp"

namespace agt {

// ---------------------------------------------------------------------------
// Figure-eight gluing.

/// <x, y | w x = y w> with w = x y^-1 x^-1 y, generators x[k], y[k].
Presentation knot_presentation(std::int64_t k);
Word knot_meridian(std::int64_t k);
Word knot_longitude(std::int64_t k);
/// Two knot groups glued by mu_1 = mu_2, lambda_1 = mu_2 lambda_2.
Presentation build_w_presentation();

// ---------------------------------------------------------------------------
// One-relator amalgam.

struct OneRelatorGroup {
  Amalgam group;
  std::vector<Word> c_gens;  // in F(a, b)
  std::vector<Word> d_gens;  // in F(c, d)
  std::shared_ptr<SubgroupAutomaton> C, D;
};

/// A = F(a,b), B = F(c,d) amalgamated along C = <a, a^{b^2}(a^b)^-1 a> and
/// D = <c^-1, c^{d^2}(c^d)^-1 c>. Edge generators z[0], z[1].
OneRelatorGroup build_onerelator_amalgam();
/// <a, b, d | a^{b^2}(a^b)^-1 a = (a^{d^2})^-1 a^d a^-1>.
Presentation onerelator_presentation();

/// a[i] -> b^-i a b^i.
Word expand_indexed(const Word& w, const Gen& a = Gen("a"), const Gen& b = Gen("b"));
/// Inverse rewrite for words of b-weight zero; throws std::invalid_argument otherwise.
Word collapse_indexed(const Word& w, const Gen& a = Gen("a"), const Gen& b = Gen("b"));
/// Basis of C inside the kernel: v0 = a[0], v1 = a[2] a[1]^-1.
Word onerelator_v0();
Word onerelator_v1();

/// r = a[1] (a[0] a[2]) a[1]^-1 (a[0] a[2])^-2 and its index shifts.
Word gamma_relator(std::int64_t shift = 0);
Word shift_indices(const Word& w, std::int64_t k);
/// alpha = a0 a2 a1 (a0 a2)^-1 a1^-1 a0 a2 as (r^-1)^{a0 a2}.
NclWitness gamma_alpha_witness();
/// The four-conjugate product of a[i]'s over relators {r, shifted r}.
NclWitness gamma_beta_witness();
std::vector<Word> gamma_beta_relators();

// ---------------------------------------------------------------------------
// Non-left-orderable amalgam.

struct ExponentMatrix {
  int s = 10, m = 8;
  /// k[t][i][j]: letter t (0 for a, 1 for b), row i, column j; 0-based.
  std::vector<std::vector<std::vector<std::int64_t>>> k;
  std::int64_t at(int t, int i, int j) const { return k[t][i][j]; }
};

struct ExponentCheck {
  bool ok = false;
  std::size_t expected = 0;
  std::size_t card_a = 0, card_b = 0;
  /// The a-family also has distinct values with last-column differences.
  bool last_column_a = false;
  std::vector<std::string> errors;
};

/// Conditions on the exponents: distinct absolute values together with the
/// first-column differences of a and the last-column differences of b, sign
/// constancy for rows 1..8 and the fixed sign pattern.
ExponentCheck validate_exponents(const ExponentMatrix& e);
/// Deterministic construction; validated before return.
ExponentMatrix sample_exponents(int s, int m, std::uint64_t seed);

struct NonLoGroup {
  ExponentMatrix e;
  std::vector<Word> alpha;      // alpha_1..alpha_m over a, b
  std::vector<Word> beta;       // Phi(alpha_i) over c, d
  std::vector<Word> phi_alpha;  // phi(alpha_i) over c, d
  std::shared_ptr<SubgroupAutomaton> C;
  Amalgam group;
  /// S and S^-1.
  std::vector<Word> basis_pm() const;
};

/// phi(alpha_i) = beta_{perm[i]}^{sign[i]}; the default pairing for i <= 8
/// is 1, 2^-1, 5, 6^-1, 3, 4^-1, 7, 8^-1 and the identity beyond.
struct Pairing {
  std::vector<std::size_t> perm;
  std::vector<int> sign;
  static Pairing standard(int m);
};

NonLoGroup build_nonlo(const ExponentMatrix& e, const std::optional<Pairing>& pairing = std::nullopt);

struct WitnessCheck {
  std::size_t index = 0;  // 1-based
  bool identity = false;
  bool signs = false;
  std::string letters;    // observed signed letters
  std::string expected;   // claimed set
};

std::vector<WitnessCheck> verify_nonlo_witnesses(const NonLoGroup& g);

struct SmallCancellationReport {
  std::size_t pairs = 0, pair_failures = 0;
  std::size_t min_pair_length = 0;
  std::size_t products = 0, product_failures = 0;
  std::size_t prefixes = 0, prefix_failures = 0;
  std::vector<std::string> failures;
  bool ok() const { return pair_failures == 0 && product_failures == 0 && prefix_failures == 0; }
};

SmallCancellationReport small_cancellation_report(const NonLoGroup& g, std::size_t trials, std::uint64_t seed);

/// Random nontrivial element of C as a product of 1..max_k basis elements with
/// no adjacent inverse pair.
Word random_c_element(const NonLoGroup& g, std::size_t max_k, std::mt19937_64& rng);

struct PrefixResult {
  enum class Case { Component, Merge } kind = Case::Component;
  Word p;
  Word u;  // the generator containing E (the right one for merges)
  std::size_t position = 0;
};

/// p(E) for a single syllable E of some element of C. Throws
/// std::invalid_argument when E is not such a syllable.
PrefixResult prefix_of(const NonLoGroup& g, const Word& E);

/// Lambda and P: largest i with L_i (resp. R_i) in L_i(C) (resp. R_i(C)).
std::size_t Lambda(const NonLoGroup& g, const Word& x);
std::size_t Pcompat(const NonLoGroup& g, const Word& x);
bool left_c_simplified(const NonLoGroup& g, const Word& x);
bool right_c_simplified(const NonLoGroup& g, const Word& x);

struct CSimplified {
  Word c1, alpha, c2;
  std::size_t steps = 0;
};

/// x = c1 alpha c2 with alpha C-simplified. Throws for x in C.
CSimplified c_simplify(const NonLoGroup& g, const Word& x);
/// Left stripping only: x = c1 alpha with alpha left C-simplified.
CSimplified c_simplify_left(const NonLoGroup& g, const Word& x);

struct StandardForm {
  std::size_t i = 0, j = 0, k = 0;
  Word chi, gamma, xi1, xi2, lambda, mu, rho;
  Word conj;  // c^g
  /// Items of the standard-form lemma that failed; empty on success.
  std::vector<std::string> failures;
};

/// Standard form of c^g; g must be left C-simplified and outside C.
StandardForm standard_form(const NonLoGroup& g, const Word& c, const Word& x);
/// Local property of the components of mu; returns failures.
std::vector<std::string> check_local_property(const NonLoGroup& g, const Word& x, const StandardForm& f);

}  // namespace agt
