#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "agt/word.hpp"

namespace agt {

/// (input index, component position), both 1-based.
using CompRef = std::pair<std::size_t, std::size_t>;

struct CompStatus {
  enum class Kind { Unaltered, Canceled, Merged } kind = Kind::Unaltered;
  /// The component it canceled or merged with; empty when that one was itself a merge.
  std::optional<CompRef> partner;
  /// Input index of the factor whose multiplication altered it.
  std::size_t step = 0;
};

/// Left-first product of g_1, ..., g_n in a free group, tracking each
/// original component through the pairwise products P_{t-1} g_t.
class LfpTrace {
 public:
  static LfpTrace left(const std::vector<Word>& gs);
  /// Right-first product of the same tuple: P_1 = g_n, P_t = g_{n-t+1} P_{t-1}.
  static LfpTrace right(const std::vector<Word>& gs);

  const std::vector<Word>& inputs() const { return inputs_; }
  /// P_1, ..., P_n in evaluation order.
  const std::vector<Word>& partials() const { return partials_; }
  const Word& product() const { return partials_.back(); }
  const CompStatus& status(std::size_t i, std::size_t pos) const { return status_.at(i - 1).at(pos - 1); }
  bool is_unaltered(std::size_t i, std::size_t pos) const;
  bool cancels(CompRef x, CompRef y) const;
  /// Canceled pairs (x, y) with x from the earlier factor.
  std::vector<std::pair<CompRef, CompRef>> cancellations() const;
  /// Original components that survive, in the order they appear in the product.
  const std::vector<std::optional<CompRef>>& final_origins() const { return origins_; }

  /// Unaltered components occur verbatim and in input order in the product.
  bool consistent() const;

 private:
  std::vector<Word> inputs_;
  std::vector<Word> partials_;
  std::vector<std::vector<CompStatus>> status_;
  std::vector<std::optional<CompRef>> origins_;
};

/// For every canceled pair (i, p), (j, q) of a left-first trace:
/// R_r(g_i) g_{i+1} ... g_{j-1} L_q(g_j) = 1 with r = l(g_i) - p + 1.
/// Returns descriptions of the pairs where this fails.
std::vector<std::string> check_pair_cancellation(const LfpTrace& t);

}  // namespace agt
