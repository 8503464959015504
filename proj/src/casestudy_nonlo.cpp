#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "agt/casestudy.hpp"

namespace agt {

namespace {

std::int64_t iabs(std::int64_t x) { return x < 0 ? -x : x; }

// Absolute values of the entries of letter t with the differences taken in column col.
std::set<std::int64_t> family(const ExponentMatrix& e, int t, int col) {
  std::set<std::int64_t> out;
  for (int i = 0; i < e.m; ++i)
    for (int j = 0; j < e.s; ++j) out.insert(iabs(e.at(t, i, j)));
  for (int i = 0; i < e.m; ++i)
    for (int i2 = i + 1; i2 < e.m; ++i2) out.insert(iabs(e.at(t, i, col) - e.at(t, i2, col)));
  return out;
}

int sgn(std::int64_t x) { return x > 0 ? 1 : -1; }

}  // namespace

ExponentCheck validate_exponents(const ExponentMatrix& e) {
  ExponentCheck r;
  if (e.s < 10) r.errors.push_back("s must be at least 10");
  if (e.m < 8) r.errors.push_back("m must be at least 8");
  bool shape = e.k.size() == 2;
  for (const auto& block : e.k) {
    shape = shape && block.size() == static_cast<std::size_t>(e.m);
    for (const auto& row : block) shape = shape && row.size() == static_cast<std::size_t>(e.s);
  }
  if (!shape) {
    r.errors.push_back("matrix shape does not match s and m");
    return r;
  }
  if (!r.errors.empty()) return r;
  for (int t = 0; t < 2; ++t)
    for (int i = 0; i < e.m; ++i)
      for (int j = 0; j < e.s; ++j)
        if (e.at(t, i, j) == 0) r.errors.push_back("zero exponent at letter " + std::to_string(t + 1) +
                                                   ", row " + std::to_string(i + 1) + ", column " +
                                                   std::to_string(j + 1));
  if (!r.errors.empty()) return r;

  r.expected = static_cast<std::size_t>(e.s * e.m + e.m * (e.m - 1) / 2);
  r.card_a = family(e, 0, 0).size();
  r.card_b = family(e, 1, e.s - 1).size();
  r.last_column_a = family(e, 0, e.s - 1).size() == r.expected;
  if (r.card_a != r.expected)
    r.errors.push_back("a-exponents: " + std::to_string(r.card_a) + " distinct values, expected " +
                       std::to_string(r.expected));
  if (r.card_b != r.expected)
    r.errors.push_back("b-exponents: " + std::to_string(r.card_b) + " distinct values, expected " +
                       std::to_string(r.expected));

  for (int i = 0; i < 8; ++i)
    for (int t = 0; t < 2; ++t) {
      const int eps = sgn(e.at(t, i, 0));
      for (int j = 1; j < e.s; ++j)
        if (sgn(e.at(t, i, j)) != eps) {
          r.errors.push_back("row " + std::to_string(i + 1) + " changes sign in letter " + std::to_string(t + 1));
          break;
        }
      const int want = (i >= 4 && t == 1) ? -1 : 1;
      if (eps != want)
        r.errors.push_back("row " + std::to_string(i + 1) + " has the wrong sign in letter " +
                           std::to_string(t + 1));
    }
  r.ok = r.errors.empty();
  return r;
}

ExponentMatrix sample_exponents(int s, int m, std::uint64_t seed) {
  if (s < 10) throw std::invalid_argument("s must be at least 10");
  if (m < 8) throw std::invalid_argument("m must be at least 8");
  std::mt19937_64 rng(seed);
  ExponentMatrix e;
  e.s = s;
  e.m = m;
  e.k.assign(2, std::vector<std::vector<std::int64_t>>(m, std::vector<std::int64_t>(s, 0)));
  for (int t = 0; t < 2; ++t) {
    std::set<std::int64_t> used;
    // Columns 1 and s: every |x - y| and x + y within a column is reserved, so
    // the differences stay distinct whatever the signs.
    for (int col : {0, s - 1}) {
      std::vector<std::int64_t> chosen;
      std::int64_t x = 1;
      while (static_cast<int>(chosen.size()) < m) {
        bool ok = !used.count(x);
        std::set<std::int64_t> fresh;
        for (auto c : chosen) {
          if (!ok) break;
          for (auto d : {iabs(c - x), c + x}) {
            if (d == x || used.count(d) || !fresh.insert(d).second) {
              ok = false;
              break;
            }
          }
        }
        if (ok) {
          chosen.push_back(x);
          used.insert(x);
          used.insert(fresh.begin(), fresh.end());
        }
        ++x;
      }
      std::shuffle(chosen.begin(), chosen.end(), rng);
      for (int i = 0; i < m; ++i) e.k[t][i][col] = chosen[i];
    }
    std::vector<std::int64_t> filler;
    for (std::int64_t x = 1; static_cast<int>(filler.size()) < m * (s - 2); ++x)
      if (!used.count(x)) filler.push_back(x);
    std::shuffle(filler.begin(), filler.end(), rng);
    std::size_t f = 0;
    for (int i = 0; i < m; ++i)
      for (int j = 1; j < s - 1; ++j) e.k[t][i][j] = filler[f++];
  }
  for (int i = 0; i < m; ++i)
    for (int t = 0; t < 2; ++t) {
      if (i < 8) {
        if (i >= 4 && t == 1)
          for (auto& v : e.k[t][i]) v = -v;
      } else {
        for (auto& v : e.k[t][i])
          if (rng() & 1) v = -v;
      }
    }
  auto chk = validate_exponents(e);
  if (!chk.ok) throw std::logic_error("sampled exponents failed validation: " + chk.errors.front());
  return e;
}

Pairing Pairing::standard(int m) {
  Pairing p;
  const std::size_t first[8] = {0, 1, 4, 5, 2, 3, 6, 7};
  for (int i = 0; i < m; ++i) {
    p.perm.push_back(i < 8 ? first[i] : static_cast<std::size_t>(i));
    p.sign.push_back(i < 8 && i % 2 == 1 ? -1 : 1);
  }
  return p;
}

std::vector<Word> NonLoGroup::basis_pm() const {
  std::vector<Word> out = alpha;
  for (const auto& a : alpha) out.push_back(a.inverse());
  return out;
}

NonLoGroup build_nonlo(const ExponentMatrix& e, const std::optional<Pairing>& pairing) {
  auto chk = validate_exponents(e);
  if (!chk.ok) throw std::invalid_argument("invalid exponent matrix: " + chk.errors.front());
  const Pairing pr = pairing ? *pairing : Pairing::standard(e.m);
  const auto m = static_cast<std::size_t>(e.m);
  if (pr.perm.size() != m || pr.sign.size() != m) throw std::invalid_argument("pairing has the wrong size");
  {
    std::vector<std::size_t> sorted = pr.perm;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < m; ++i)
      if (sorted[i] != i) throw std::invalid_argument("pairing is not a permutation");
    for (int sg : pr.sign)
      if (sg != 1 && sg != -1) throw std::invalid_argument("pairing signs must be +1 or -1");
  }
  const Gen a("a"), b("b"), c("c"), d("d");
  std::vector<Word> alpha, beta, phi;
  for (int i = 0; i < e.m; ++i) {
    Word w, v;
    for (int j = 0; j < e.s; ++j) {
      w *= Word(a, e.at(0, i, j)) * Word(b, e.at(1, i, j));
      v *= Word(c, e.at(0, i, j)) * Word(d, e.at(1, i, j));
    }
    alpha.push_back(w);
    beta.push_back(v);
  }
  for (std::size_t i = 0; i < m; ++i) phi.push_back(beta[pr.perm[i]].pow(pr.sign[i]));
  std::vector<Gen> z;
  for (std::size_t i = 0; i < m; ++i) z.emplace_back("z", static_cast<std::int64_t>(i));
  auto C = std::make_shared<SubgroupAutomaton>(SubgroupAutomaton::fold(alpha, z));
  if (C->rank() != m) throw std::logic_error("S is not a free basis");
  FactorSpec fa{"A", FactorKind::Free, {a, b}, {}};
  FactorSpec fb{"B", FactorKind::Free, {c, d}, {}};
  for (std::size_t i = 0; i < m; ++i) {
    fa.edge_images.set(z[i], alpha[i]);
    fb.edge_images.set(z[i], phi[i]);
  }
  return NonLoGroup{e, alpha, beta, phi, C, Amalgam(z, {fa, fb})};
}

std::vector<WitnessCheck> verify_nonlo_witnesses(const NonLoGroup& g) {
  static const char* claimed[8] = {"a b c^-1 d^-1", "a b c d",         "a b c^-1 d",     "a b c d^-1",
                                   "a b^-1 c^-1 d^-1", "a b^-1 c d", "a b^-1 c^-1 d", "a b^-1 c d^-1"};
  std::vector<WitnessCheck> out;
  const std::size_t n = std::min<std::size_t>(8, g.alpha.size());
  for (std::size_t i = 0; i < n; ++i) {
    WitnessCheck w;
    w.index = i + 1;
    const auto& G = g.group;
    w.identity = G.mul(G.embed(0, g.alpha[i]), G.inv(G.embed(1, g.phi_alpha[i]))).is_identity();
    std::set<std::pair<Gen, int>> seen;
    for (const Word& word : {g.alpha[i], g.phi_alpha[i].inverse()})
      for (const auto& s : word.syllables()) seen.insert({s.gen, s.exp > 0 ? 1 : -1});
    std::set<std::pair<Gen, int>> want;
    const Word claim = Word::parse(claimed[i]);
    for (const auto& s : claim.syllables()) want.insert({s.gen, s.exp > 0 ? 1 : -1});
    w.signs = std::includes(want.begin(), want.end(), seen.begin(), seen.end());
    for (const auto& [gen, sg] : seen) {
      if (!w.letters.empty()) w.letters += " ";
      w.letters += gen.str() + (sg < 0 ? "^-1" : "");
    }
    w.expected = claimed[i];
    out.push_back(w);
  }
  return out;
}

Word random_c_element(const NonLoGroup& g, std::size_t max_k, std::mt19937_64& rng) {
  const auto pm = g.basis_pm();
  const std::size_t m = g.alpha.size();
  std::uniform_int_distribution<std::size_t> kd(1, std::max<std::size_t>(1, max_k));
  std::uniform_int_distribution<std::size_t> ud(0, pm.size() - 1);
  const std::size_t k = kd(rng);
  Word out;
  std::size_t prev = pm.size();
  for (std::size_t t = 0; t < k; ++t) {
    std::size_t u;
    do u = ud(rng);
    while (prev < pm.size() && (u + m == prev || prev + m == u));
    out *= pm[u];
    prev = u;
  }
  return out;
}

SmallCancellationReport small_cancellation_report(const NonLoGroup& g, std::size_t trials, std::uint64_t seed) {
  SmallCancellationReport r;
  const auto pm = g.basis_pm();
  const std::size_t s = static_cast<std::size_t>(g.e.s);
  const std::size_t m = g.alpha.size();
  auto fail = [&](std::string what) {
    if (r.failures.size() < 20) r.failures.push_back(std::move(what));
  };
  r.min_pair_length = static_cast<std::size_t>(-1);
  for (std::size_t i = 0; i < pm.size(); ++i)
    for (std::size_t j = 0; j < pm.size(); ++j) {
      if (i + m == j || j + m == i) continue;
      ++r.pairs;
      const Word uv = pm[i] * pm[j];
      r.min_pair_length = std::min(r.min_pair_length, uv.length());
      if (syllable_cancellation(pm[i], pm[j]) != 0 || uv.length() < 4 * s - 1) {
        ++r.pair_failures;
        fail("pair (" + std::to_string(i) + ", " + std::to_string(j) + ") has length " +
             std::to_string(uv.length()));
      }
    }
  if (r.pairs == 0) r.min_pair_length = 0;

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> kd(1, 5), ud(0, pm.size() - 1);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t k = kd(rng);
    std::vector<std::size_t> idx;
    while (idx.size() < k) {
      const std::size_t u = ud(rng);
      if (!idx.empty() && (u + m == idx.back() || idx.back() + m == u)) continue;
      idx.push_back(u);
    }
    Word prod;
    bool ok = true;
    for (std::size_t t = 0; t < k; ++t) {
      prod *= pm[idx[t]];
      if (t + 1 < k && (pm[idx[t]] * pm[idx[t + 1]]).length() + 1 < 4 * s) ok = false;
    }
    const std::size_t w = 2 * s - 1;
    ok = ok && prod.prefix(w) == pm[idx.front()].prefix(w) && prod.suffix(w) == pm[idx.back()].suffix(w);
    ok = ok && prod.length() + (k - 1) >= 2 * k * s;
    ++r.products;
    if (!ok) {
      ++r.product_failures;
      fail("product of " + std::to_string(k) + " generators violates the length or prefix bounds");
    }
    // B_{i+2}(c) != B_i(c)^-1 along every prefix of the product.
    for (std::size_t i = 1; i + 2 <= prod.length(); ++i) {
      ++r.prefixes;
      if (prod.block(i + 2) == prod.block(i).inverse()) {
        ++r.prefix_failures;
        fail("symmetric triple at component " + std::to_string(i));
      }
    }
  }
  return r;
}

}  // namespace agt
