#include "agt/tamed.hpp"

namespace agt {

AmalgamElement ConjTuple::t(std::size_t i) const {
  if (i < 1 || i > entries.size()) return {};
  return entries[i - 1].t;
}

AmalgamElement ConjTuple::g(std::size_t i) const {
  if (i < 1 || i > entries.size()) return {};
  return entries[i - 1].g;
}

AmalgamElement conj_product(const Amalgam& G, const ConjTuple& v) {
  AmalgamElement acc;
  for (const auto& e : v.entries) acc = G.mul(acc, G.conj(e.t, e.g));
  return acc;
}

CancellabilityResult cancellability(const Amalgam& G, const ConjTuple& v, std::size_t i) {
  if (i < 1 || i > v.size()) throw std::out_of_range("cancellability index");
  CancellabilityResult res;
  const auto gp = v.g(i - 1), gi = v.g(i), gn_inv = G.inv(v.g(i + 1)), ti = v.t(i);
  const auto rights = G.factors(gp, Side::Right);
  const auto lefts = G.factors(gn_inv, Side::Left);
  const auto gi_inv_t = G.mul(G.inv(gi), ti);
  const auto t_gi = G.mul(ti, gi);
  const auto ci = G.conj(ti, gi);

  for (const auto& r : rights)
    if (G.in_edge(G.mul(r.factor, gi_inv_t))) {
      res.lhs = true;
      res.right_factor = r.factor;
      break;
    }
  for (const auto& l : lefts)
    if (G.in_edge(G.mul(t_gi, l.factor))) {
      res.rhs = true;
      if (!res.lhs) res.left_factor = l.factor;
      break;
    }
  for (const auto& r : rights) {
    auto rc = G.mul(r.factor, ci);
    for (const auto& l : lefts)
      if (G.in_edge(G.mul(rc, l.factor))) {
        res.two_sided = true;
        if (!res.lhs && !res.rhs) {
          res.right_factor = r.factor;
          res.left_factor = l.factor;
        }
        break;
      }
    if (res.two_sided) break;
  }
  res.kind = res.lhs ? Cancellable::LHS
             : res.rhs ? Cancellable::RHS
             : res.two_sided ? Cancellable::TwoSided
                             : Cancellable::None;
  return res;
}

TamedResult is_tamed(const Amalgam& G, const ConjTuple& v) {
  const std::size_t n = v.size();
  if (n < 1) throw std::invalid_argument("conjugate tuple must be nonempty");
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& t = v.t(i);
    const auto& g = v.g(i);
    if (t.length() != 1 || !G.is_reduced({G.inv(g), t, g})) return {false, 1, i};
  }
  for (std::size_t i = 1; i < n; ++i)
    if (G.mul(v.g(i), G.inv(v.g(i + 1))).length() == 0 && G.mul(v.t(i), v.t(i + 1)).length() != 2)
      return {false, 2, i};
  for (std::size_t i = 1; i <= n; ++i)
    if (cancellability(G, v, i).kind != Cancellable::None) return {false, 3, i};
  return {};
}

bool DeltaFactorization::all_reduced() const {
  for (const auto& s : steps)
    if (!s.reduced) return false;
  return true;
}

bool DeltaFactorization::all_telescope() const {
  for (const auto& s : steps)
    if (!s.telescopes) return false;
  return true;
}

DeltaFactorization delta_factorize(const Amalgam& G, const ConjTuple& v) {
  auto tr = is_tamed(G, v);
  if (!tr.tamed)
    throw NotTamed("tuple violates clause " + std::to_string(tr.clause) + " at entry " + std::to_string(tr.index));
  DeltaFactorization out;
  AmalgamElement T;  // T_{i-1}
  for (std::size_t i = 1; i <= v.size(); ++i) {
    DeltaStep st;
    const auto gp = v.g(i - 1), gi = v.g(i);
    const auto E = G.mul(gp, G.inv(gi));
    if (E.length() >= 1) {
      auto e1 = G.left_part(E, 1);
      if (G.mul(v.t(i - 1), e1).length() == 1) {
        st.delta = e1;
        st.merged = true;
      }
    }
    st.x = G.mul(G.mul(T, G.inv(gp)), st.delta);
    st.y = G.mul(G.mul(G.inv(st.delta), E), v.t(i));
    st.z = gi;
    auto Ti = G.mul(T, G.conj(v.t(i), gi));
    st.reduced = G.is_reduced({st.x, st.y, st.z});
    st.telescopes = G.equal(G.product({st.x, st.y, st.z}), Ti);
    out.steps.push_back(std::move(st));
    T = Ti;
  }
  return out;
}

LengthBound tamed_length_bound(const Amalgam& G, const ConjTuple& v) {
  auto tr = is_tamed(G, v);
  if (!tr.tamed)
    throw NotTamed("tuple violates clause " + std::to_string(tr.clause) + " at entry " + std::to_string(tr.index));
  LengthBound b;
  b.lhs = conj_product(G, v).length();
  b.rhs = v.g(1).length() + v.size() + v.g(v.size()).length();
  b.holds = b.lhs >= b.rhs;
  return b;
}

Word random_outside(const Amalgam& G, std::size_t i, std::size_t word_len_max, std::mt19937_64& rng) {
  const auto& al = G.factor(i).alphabet;
  if (al.empty()) throw std::invalid_argument("factor has an empty alphabet");
  std::uniform_int_distribution<std::size_t> len(1, std::max<std::size_t>(1, word_len_max));
  std::uniform_int_distribution<std::size_t> pick(0, al.size() - 1);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Letter> ls;
    auto n = len(rng);
    for (std::size_t k = 0; k < n; ++k) ls.push_back({al[pick(rng)], sign(rng) ? 1 : -1});
    Word w = G.f_normal(i, reduce(ls));
    if (!w.is_identity() && !G.in_edge(i, w)) return w;
  }
  throw std::runtime_error("could not sample a factor element outside the edge group");
}

AmalgamElement random_element(const Amalgam& G, std::size_t len, std::size_t word_len_max,
                              std::mt19937_64& rng) {
  const std::size_t k = G.factor_count();
  if (k < 2 && len > 1) throw std::invalid_argument("lengths above 1 need two factors");
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  std::vector<Component> raw;
  if (!G.edge_alphabet().empty() && std::uniform_int_distribution<int>(0, 1)(rng)) {
    std::uniform_int_distribution<std::size_t> z(0, G.edge_alphabet().size() - 1);
    Word c(G.edge_alphabet()[z(rng)], std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1);
    raw.push_back({0, G.from_edge(0, c)});
  }
  std::size_t prev = k;
  for (std::size_t j = 0; j < len; ++j) {
    std::size_t f;
    do f = pick(rng);
    while (f == prev);
    raw.push_back({f, random_outside(G, f, word_len_max, rng)});
    prev = f;
  }
  return G.normalize(raw);
}

std::optional<ConjTuple> sample_tamed(const Amalgam& G, std::size_t n, const SamplerConfig& cfg,
                                      std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> glen(0, cfg.g_len_max);
  std::uniform_int_distribution<std::size_t> fac(0, G.factor_count() - 1);
  for (std::size_t attempt = 0; attempt < cfg.attempts; ++attempt) {
    ConjTuple v;
    bool ok = true;
    for (std::size_t i = 1; i <= n && ok; ++i) {
      bool placed = false;
      for (int tries = 0; tries < 50 && !placed; ++tries) {
        auto g = random_element(G, glen(rng), cfg.word_len_max, rng);
        auto f = fac(rng);
        auto t = G.embed(f, random_outside(G, f, cfg.word_len_max, rng));
        if (!G.is_reduced({G.inv(g), t, g})) continue;
        v.entries.push_back({t, g});
        bool good = true;
        if (i > 1) {
          if (G.mul(v.g(i - 1), G.inv(g)).length() == 0 && G.mul(v.t(i - 1), t).length() != 2) good = false;
          if (good && cancellability(G, v, i - 1).kind != Cancellable::None) good = false;
        }
        if (!good) {
          v.entries.pop_back();
          continue;
        }
        placed = true;
      }
      ok = placed;
    }
    if (!ok) continue;
    if (cancellability(G, v, n).kind != Cancellable::None) continue;
    if (!is_tamed(G, v).tamed) continue;
    return v;
  }
  return std::nullopt;
}

}  // namespace agt
