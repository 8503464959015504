#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agt/stallings.hpp"
#include "agt/word.hpp"

namespace agt {

enum class FactorKind { Free, FreeAbelian };

/// Factor group description: its alphabet and the images of the edge
/// generators. Free-abelian factors use sorted words as normal forms.
struct FactorSpec {
  std::string name;
  FactorKind kind = FactorKind::Free;
  std::vector<Gen> alphabet;
  HomSpec edge_images;
};

struct Component {
  std::size_t factor = 0;
  Word w;
  bool operator==(const Component&) const = default;
};

/// c g_1 ... g_n: head c is a word in the edge alphabet, components alternate
/// between factors and none lies in the edge subgroup.
struct AmalgamElement {
  Word head;
  std::vector<Component> comps;
  std::size_t length() const { return comps.size(); }
  bool is_identity() const { return comps.empty() && head.empty(); }
  bool operator==(const AmalgamElement&) const = default;
};

using Tuple = std::vector<AmalgamElement>;

struct Splitting {
  AmalgamElement factor;
  AmalgamElement cofactor;
};

struct SandwichDecomposition {
  std::vector<AmalgamElement> g;      // g_0 .. g_n
  std::vector<AmalgamElement> alpha;  // alpha_1 .. alpha_n
};

struct SandwichResult {
  enum class Status { VerifiedNontrivial, ConditionViolated, Degenerate } status;
  std::size_t index = 0;  // violating i
  AmalgamElement right_factor, left_factor;
  std::size_t left_k = 0, right_k = 0;
  AmalgamElement product;
};

/// G = *_C G_i over a single edge group C, given as a free group on the
/// edge alphabet embedded in each factor.
class Amalgam {
 public:
  Amalgam(std::vector<Gen> edge_alphabet, std::vector<FactorSpec> factors);

  std::size_t factor_count() const { return factors_.size(); }
  const FactorSpec& factor(std::size_t i) const { return factors_[i].spec; }
  const std::vector<Gen>& edge_alphabet() const { return edge_; }
  std::optional<std::size_t> factor_index(const std::string& name) const;
  /// Factor whose alphabet contains every generator of w.
  std::optional<std::size_t> factor_of(const Word& w) const;
  const SubgroupAutomaton* edge_automaton(std::size_t i) const;

  // Factor-level arithmetic.
  Word f_normal(std::size_t i, const Word& w) const;
  Word f_mul(std::size_t i, const Word& x, const Word& y) const;
  Word f_inv(std::size_t i, const Word& x) const;
  /// Edge word for x when x lies in C, else nullopt.
  std::optional<Word> to_edge(std::size_t i, const Word& x) const;
  Word from_edge(std::size_t i, const Word& c) const;
  bool in_edge(std::size_t i, const Word& x) const { return to_edge(i, x).has_value(); }

  /// Canonical right-coset representative of x in factor i.
  Word coset_rep(std::size_t i, const Word& x) const;

  // Elements. Every returned element is in canonical form c r_1 ... r_n with
  // r_j canonical coset representatives, so equal elements compare equal.
  AmalgamElement canonical(AmalgamElement x) const;
  AmalgamElement normalize(const std::vector<Component>& raw) const;
  AmalgamElement embed(std::size_t i, const Word& w) const;
  AmalgamElement edge_element(const Word& c) const;
  AmalgamElement mul(const AmalgamElement& x, const AmalgamElement& y) const;
  AmalgamElement product(const Tuple& xs) const;
  AmalgamElement inv(const AmalgamElement& x) const;
  AmalgamElement pow(const AmalgamElement& x, std::int64_t n) const;
  /// h^-1 x h.
  AmalgamElement conj(const AmalgamElement& x, const AmalgamElement& h) const;
  bool equal(const AmalgamElement& x, const AmalgamElement& y) const;
  bool in_edge(const AmalgamElement& x) const { return x.comps.empty(); }
  /// Raw components with the head pushed into the first component.
  std::vector<Component> raw(const AmalgamElement& x) const;

  std::size_t lei(const AmalgamElement& x) const;
  std::size_t rei(const AmalgamElement& x) const;
  std::vector<std::size_t> index_vector(const AmalgamElement& x) const;

  /// K(g, h).
  std::size_t cancellation_number(const AmalgamElement& g, const AmalgamElement& h) const;
  /// Same quantity by normalizing every x_k..x_1 y_1..y_k from scratch.
  std::size_t cancellation_number_oracle(const AmalgamElement& g, const AmalgamElement& h) const;

  bool end_preserving(const Tuple& t, Side side) const;
  bool is_reduced(const Tuple& t) const;
  /// All l(g)+1 splittings g = factor * cofactor (left) or cofactor * factor (right).
  std::vector<Splitting> factors(const AmalgamElement& g, Side side) const;
  /// First k components (with head) and the remainder.
  AmalgamElement left_part(const AmalgamElement& g, std::size_t k) const;
  AmalgamElement right_part(const AmalgamElement& g, std::size_t k) const;

  SandwichResult check_sandwich_nontrivial(const SandwichDecomposition& d) const;

  /// Bracketed text form `[A: a^3 b^-1][B: c d]`; "1" for the identity.
  std::string str(const AmalgamElement& x) const;
  /// Accepts the bracketed form, a plain word over one factor, or `[x,y]`
  /// commutators of such words.
  AmalgamElement parse(const std::string& text) const;

 private:
  struct Factor {
    FactorSpec spec;
    std::shared_ptr<SubgroupAutomaton> aut;  // free kind
    std::vector<std::int64_t> edge_vec;      // abelian kind, single edge generator
  };
  void push(AmalgamElement& acc, const Component& c) const;
  std::vector<std::int64_t> f_vec(std::size_t i, const Word& x) const;
  Word f_word(std::size_t i, const std::vector<std::int64_t>& v) const;

  std::vector<Gen> edge_;
  std::vector<Factor> factors_;
};

}  // namespace agt
