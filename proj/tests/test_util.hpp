#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "agt/word.hpp"

namespace agt::testing {

inline std::vector<Gen> gens(std::initializer_list<const char*> names) {
  std::vector<Gen> out;
  for (auto n : names) out.emplace_back(n);
  return out;
}

inline std::vector<Gen> indexed(const char* name, std::int64_t lo, std::int64_t hi) {
  std::vector<Gen> out;
  for (auto i = lo; i <= hi; ++i) out.emplace_back(name, i);
  return out;
}

/// Raw letter sequence, not reduced.
inline std::vector<Letter> random_letters(std::mt19937_64& rng, const std::vector<Gen>& alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len), pick(0, alphabet.size() - 1);
  std::bernoulli_distribution sign(0.5);
  std::vector<Letter> out(len(rng));
  for (auto& l : out) l = {alphabet[pick(rng)], sign(rng) ? 1 : -1};
  return out;
}

inline Word random_word(std::mt19937_64& rng, const std::vector<Gen>& alphabet, std::size_t max_len) {
  return reduce(random_letters(rng, alphabet, max_len));
}

/// Stack reduction on letters, independent of the syllable representation.
inline std::vector<Letter> naive_reduce(const std::vector<Letter>& in) {
  std::vector<Letter> st;
  for (const auto& l : in) {
    if (!st.empty() && st.back().gen == l.gen && st.back().sign == -l.sign)
      st.pop_back();
    else
      st.push_back(l);
  }
  return st;
}

inline bool same_letters(const std::vector<Letter>& x, const std::vector<Letter>& y) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i].gen == y[i].gen) || x[i].sign != y[i].sign) return false;
  return true;
}

}  // namespace agt::testing
