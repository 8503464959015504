#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace agt {

using BigInt = boost::multiprecision::cpp_int;

/// Raised on malformed text input or a generator outside the declared alphabet.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Generator of a free group: a name plus an optional integer index (a[3]).
/// Names are interned, so copies are cheap and equality is integer comparison.
class Gen {
 public:
  Gen() = default;
  explicit Gen(std::string_view name);
  Gen(std::string_view name, std::int64_t index);

  const std::string& name() const;
  bool indexed() const { return indexed_; }
  std::int64_t index() const { return index_; }
  std::string str() const;

  bool operator==(const Gen& o) const {
    return sym_ == o.sym_ && indexed_ == o.indexed_ && index_ == o.index_;
  }
  /// Orders by name text, then unindexed before indexed, then index.
  std::strong_ordering operator<=>(const Gen& o) const;

  std::size_t hash() const;

 private:
  std::uint32_t sym_ = 0;
  bool indexed_ = false;
  std::int64_t index_ = 0;
};

struct Syllable {
  Gen gen;
  std::int64_t exp = 0;
  bool operator==(const Syllable&) const = default;
};

struct Letter {
  Gen gen;
  int sign = 1;
};

/// Freely reduced word, stored as maximal syllables.
class Word {
 public:
  Word() = default;
  explicit Word(Gen g, std::int64_t e = 1);

  /// Parses whitespace separated tokens `g`, `g^k`, `g^-k`, `a[i]`, `a[i]^k`.
  /// `1` and the empty string denote the identity. When `alphabet` is given,
  /// any generator outside it raises ParseError.
  static Word parse(std::string_view text, const std::vector<Gen>* alphabet = nullptr);
  static Word from_syllables(const std::vector<Syllable>& syls);

  const std::vector<Syllable>& syllables() const { return syl_; }
  bool empty() const { return syl_.empty(); }
  bool is_identity() const { return syl_.empty(); }
  /// Syllable length l(w).
  std::size_t length() const { return syl_.size(); }
  std::int64_t letter_len() const;

  const Syllable& syl(std::size_t i) const { return syl_[i]; }
  /// B_i(w), 1-based.
  Word block(std::size_t i) const;
  /// RB_i(w): i-th syllable from the right, 1-based.
  Word rblock(std::size_t i) const;
  /// L_i(w): first i syllables.
  Word prefix(std::size_t i) const;
  /// R_i(w): last i syllables.
  Word suffix(std::size_t i) const;
  /// B_[i,j](w), 1-based inclusive.
  Word range(std::size_t i, std::size_t j) const;

  Word inverse() const;
  Word pow(std::int64_t n) const;
  /// h^-1 w h.
  Word conj(const Word& h) const;

  Word& operator*=(const Word& o);
  friend Word operator*(Word a, const Word& b) { return a *= b; }

  void push_back(const Syllable& s);
  std::vector<Letter> letters() const;
  std::set<Gen> support() const;

  std::string str() const;

  bool operator==(const Word&) const = default;
  bool operator<(const Word& o) const;

 private:
  std::vector<Syllable> syl_;
};

/// x y x^-1 y^-1.
Word commutator(const Word& x, const Word& y);
/// Freely reduces a raw letter sequence.
Word reduce(const std::vector<Letter>& letters, const std::vector<Gen>* alphabet = nullptr);

/// Syllable decomposition; with `strict` set, rejects words outside {a, b}.
std::vector<Syllable> syllables(const Word& w, const std::vector<Gen>* strict = nullptr);
Word flatten(const std::vector<Syllable>& syls);

/// Number of full syllable pairs RB_i(g), B_i(h) that cancel in g*h.
std::size_t syllable_cancellation(const Word& g, const Word& h);

/// Substitution homomorphism Gen -> Word.
class HomSpec {
 public:
  HomSpec() = default;
  static HomSpec identity(const std::vector<Gen>& alphabet);
  void set(const Gen& g, const Word& image) { map_[g] = image; }
  bool has(const Gen& g) const { return map_.count(g) != 0; }
  const Word& at(const Gen& g) const;
  const std::map<Gen, Word>& map() const { return map_; }
  std::vector<Gen> domain() const;

 private:
  std::map<Gen, Word> map_;
};

Word apply_hom(const HomSpec& h, const Word& w);

/// Exponent sum of t in w.
std::int64_t weight(const Word& w, const Gen& t);
/// Exponent sum of basis generator t after rewriting w in the basis whose
/// images are given by `basis`. Throws NotMember when w is outside the span.
std::int64_t weight(const Word& w, const Gen& t, const HomSpec& basis);

struct Presentation {
  std::vector<Gen> generators;
  std::vector<Word> relators;
};

struct AbelianInvariants {
  std::size_t free_rank = 0;
  /// Invariant factors greater than 1.
  std::vector<BigInt> torsion;
  /// All nonzero diagonal entries of the Smith form.
  std::vector<BigInt> invariant_factors;
  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const;
};

using IntMatrix = std::vector<std::vector<BigInt>>;

/// Smith normal form diagonal of an integer matrix (nonzero entries only,
/// each dividing the next, all positive).
std::vector<BigInt> smith_diagonal(IntMatrix m);
AbelianInvariants abelianize_snf(const Presentation& p);

}  // namespace agt

template <>
struct std::hash<agt::Gen> {
  std::size_t operator()(const agt::Gen& g) const noexcept { return g.hash(); }
};

template <>
struct std::hash<agt::Word> {
  std::size_t operator()(const agt::Word& w) const noexcept;
};
