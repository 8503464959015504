#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "agt/word.hpp"

namespace agt {

class NotMember : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Side { Left, Right, Both };

/// Folded graph of a finitely generated subgroup of a free group.
///
/// Each transition carries a word in the subgroup generators (its
/// provenance), so expressing an accepted word is a walk that multiplies
/// those labels together.
class SubgroupAutomaton {
 public:
  /// Folds the petal graph of `generators`. `names` supplies the witness
  /// alphabet; by default g1, g2, ... in input order.
  static SubgroupAutomaton fold(const std::vector<Word>& generators,
                                const std::vector<Gen>& names = {});

  std::size_t state_count() const { return trans_.size(); }
  std::size_t edge_count() const;
  /// First Betti number E - V + 1: the rank of the subgroup.
  std::size_t rank() const { return edge_count() + 1 - state_count(); }
  std::size_t base_degree() const;
  /// Stopping points on the single-generator runs leaving the base: vertices
  /// where another generator branches off, or the base itself. Equals the
  /// number of distinct first syllables when petals do not fold syllable-wise.
  std::size_t syllable_base_degree() const;

  const std::vector<Gen>& alphabet() const { return alphabet_; }
  const std::vector<Gen>& witness_alphabet() const { return names_; }
  const std::vector<Word>& generators() const { return gens_; }

  bool contains(const Word& w) const;
  /// Word in the witness alphabet evaluating to w; throws NotMember.
  Word express(const Word& w) const;
  /// Evaluates a witness word through the generator images.
  Word evaluate(const Word& witness) const;

  /// Is there c in the subgroup with l(c) >= i and L_i(c) = p (or R_i(c) = p)?
  bool prefix_acceptable(const Word& p, std::size_t i, Side side) const;
  /// Largest i <= l(w) with L_i(w) in L_i(C).
  std::size_t left_compat(const Word& w) const;
  /// Largest i <= l(w) with R_i(w) in R_i(C).
  std::size_t right_compat(const Word& w) const;

  /// Canonical representative of the right coset C w: the tree path to the
  /// vertex where reading w leaves the graph, followed by the unread tail.
  Word coset_rep(const Word& w) const;

  /// Structural fingerprint; equal for isomorphic automata.
  std::string canonical() const;
  std::string to_json() const;

 private:
  static constexpr std::int32_t kNone = -1;

  std::int32_t label_of(const Gen& g, std::int64_t e) const;
  // Reads syllable (label, count) from state s; kNone when it leaves the graph.
  std::int32_t step(std::int32_t s, std::int32_t label, std::int64_t count) const;
  std::int32_t read(const Word& w, std::int32_t from) const;
  void build_runs();
  void build_good();

  std::vector<Gen> alphabet_;
  std::vector<Gen> names_;
  std::vector<Word> gens_;
  HomSpec images_;
  // trans_[state][label], label = 2 * gen index + (inverse ? 1 : 0).
  std::vector<std::vector<std::int32_t>> trans_;
  std::vector<std::vector<Word>> omega_;
  std::vector<Word> tree_;  // BFS tree path from base
  // Runs of a single positive label: chains or cycles.
  struct Run {
    std::vector<std::int32_t> states;
    bool cycle = false;
  };
  std::vector<Run> runs_;
  std::vector<std::vector<std::int32_t>> run_id_;   // [state][gen]
  std::vector<std::vector<std::int32_t>> run_pos_;  // [state][gen]
  std::vector<std::vector<char>> good_;             // [state][label]
};

}  // namespace agt
