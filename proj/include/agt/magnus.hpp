#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "agt/word.hpp"

namespace agt {

/// X_{i_1} ... X_{i_k}; the empty sequence is the constant monomial.
using Monomial = std::vector<std::int64_t>;

/// Integer noncommutative power series truncated above degree `cap`.
/// Coefficients are int64 with overflow detection.
class Series {
 public:
  explicit Series(int cap = 4);
  static Series one(int cap);
  static Series var(std::int64_t i, int cap);

  int cap() const { return cap_; }
  const std::map<Monomial, std::int64_t>& terms() const { return terms_; }
  std::int64_t coeff(const Monomial& m) const;
  bool is_zero() const { return terms_.empty(); }

  /// Adds c to the coefficient of m; monomials beyond the cap are dropped.
  void add(const Monomial& m, std::int64_t c);

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  /// Product truncated at min of the caps.
  friend Series operator*(const Series& a, const Series& b);
  bool operator==(const Series& o) const { return terms_ == o.terms_; }

  Series truncated(int d) const;
  /// Degree-k homogeneous part.
  Series homogeneous(int k) const;
  /// Smallest k >= 1 with a nonzero degree-k part.
  std::optional<int> min_positive_degree() const;
  std::set<std::int64_t> variables() const;

  /// Sorted terms, e.g. `1 - 1 * X_{0} + 1 * X_{0}X_{0}`; `0` when empty.
  std::string str() const;

 private:
  int cap_;
  std::map<Monomial, std::int64_t> terms_;
};

/// Assigns a variable index to a generator.
using VarMap = std::function<std::int64_t(const Gen&)>;
/// a[i] -> i; throws ParseError on unindexed generators.
VarMap indexed_vars();
/// k-th generator of `alphabet` -> k.
VarMap alphabet_vars(const std::vector<Gen>& alphabet);

/// mu(a_i) = 1 + X_i, truncated at degree d.
Series mu(const Word& w, int d, const VarMap& vars = indexed_vars());

struct LeadingTerm {
  int degree = 0;
  Series part;
};

/// Lowest nonzero homogeneous part of mu(w) - 1; nullopt for the identity.
/// The truncation degree doubles from 1 up to min(max_d, letter length).
std::optional<LeadingTerm> leading_term(const Word& w, int max_d = 64, const VarMap& vars = indexed_vars());

/// Linear extension of X_{i_1}..X_{i_k} -> X_{s(i_1)}..X_{s(i_k)}. Throws when s
/// misses an occurring index.
Series apply_sigma(const Series& s, const std::map<std::int64_t, std::int64_t>& sigma);

struct RelationSpec {
  enum class Kind { ZeroVars, Identify } kind = Kind::ZeroVars;
  std::set<std::int64_t> zero;                  // X_i = 0
  std::map<std::int64_t, std::int64_t> sigma;   // X_i - X_{sigma(i)} = 0
  static RelationSpec zero_vars(std::set<std::int64_t> z);
  static RelationSpec identify(std::map<std::int64_t, std::int64_t> s);
};

/// Image of s in the quotient by the relations.
Series quotient(const RelationSpec& r, const Series& s);
/// The image of mu(w) is 1.
bool annihilates(const RelationSpec& r, const Word& w, const VarMap& vars = indexed_vars());
/// The image of a homogeneous part is 0.
bool annihilates(const RelationSpec& r, const LeadingTerm& l);

/// For alpha in <v0, v1> with both weights zero: do X_0, X_1, X_2 all occur in
/// L(alpha)? Throws std::invalid_argument when the precondition fails.
bool check_c_leading_vars(const Word& alpha, const Word& v0, const Word& v1);

/// Sign of w in the Magnus order: the first nonzero coefficient of mu(w) - 1,
/// by degree and then lexicographically on monomials. 0 for the identity.
int magnus_sign(const Word& w, const VarMap& vars);

}  // namespace agt
