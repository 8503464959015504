#pragma once

#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "agt/amalgam.hpp"

namespace agt {

class NotTamed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConjEntry {
  AmalgamElement t, g;
};

/// (t_1, g_1), ..., (t_n, g_n); out-of-range indices read as 1.
struct ConjTuple {
  std::vector<ConjEntry> entries;
  std::size_t size() const { return entries.size(); }
  AmalgamElement t(std::size_t i) const;  // 1-based
  AmalgamElement g(std::size_t i) const;  // 1-based
};

enum class Cancellable { None, LHS, RHS, TwoSided };

struct CancellabilityResult {
  Cancellable kind = Cancellable::None;
  bool lhs = false, rhs = false, two_sided = false;
  AmalgamElement right_factor;  // R_{i-1}
  AmalgamElement left_factor;   // L_{i+1}
};

CancellabilityResult cancellability(const Amalgam& G, const ConjTuple& v, std::size_t i);

struct TamedResult {
  bool tamed = true;
  int clause = 0;         // first violated clause (1..3), 0 when tamed
  std::size_t index = 0;  // entry index of the violation
};

TamedResult is_tamed(const Amalgam& G, const ConjTuple& v);

struct DeltaStep {
  AmalgamElement delta;
  AmalgamElement x, y, z;  // T_{i-1} g_{i-1}^-1 d, d^-1 g_{i-1} g_i^-1 t_i, g_i
  bool merged = false;     // delta = e_{i,1}
  bool reduced = false;
  bool telescopes = false;
};

struct DeltaFactorization {
  std::vector<DeltaStep> steps;
  bool all_reduced() const;
  bool all_telescope() const;
};

DeltaFactorization delta_factorize(const Amalgam& G, const ConjTuple& v);

struct LengthBound {
  std::size_t lhs = 0, rhs = 0;
  bool holds = false;
};

LengthBound tamed_length_bound(const Amalgam& G, const ConjTuple& v);

/// t_1^{g_1} ... t_n^{g_n}.
AmalgamElement conj_product(const Amalgam& G, const ConjTuple& v);

struct SamplerConfig {
  std::size_t n_max = 5;
  std::size_t g_len_max = 4;   // syllable length of g_i
  std::size_t word_len_max = 3;  // letters per component
  std::size_t attempts = 200;
};

/// Random element of G with the given syllable length.
AmalgamElement random_element(const Amalgam& G, std::size_t len, std::size_t word_len_max,
                              std::mt19937_64& rng);
/// Random factor element of factor i outside C.
Word random_outside(const Amalgam& G, std::size_t i, std::size_t word_len_max, std::mt19937_64& rng);

/// Rejection sampler for tamed tuples; returns nullopt when every attempt fails.
std::optional<ConjTuple> sample_tamed(const Amalgam& G, std::size_t n, const SamplerConfig& cfg,
                                      std::mt19937_64& rng);

}  // namespace agt
