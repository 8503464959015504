#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <unordered_set>

#include "agt/casestudy.hpp"
#include "agt/gentorsion.hpp"
#include "agt/lfp.hpp"
#include "agt/magnus.hpp"
#include "agt/tamed.hpp"

namespace agt {

namespace {

using Rng = std::mt19937_64;
using Inputs = std::vector<std::pair<std::string, std::string>>;

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t i) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct Trial {
  SuiteReport& rep;
  Rng rng;
  std::uint64_t seed;
  std::size_t index;
  const SuiteOptions& opt;

  void check() { ++rep.checked; }
  void skip() { ++rep.skipped; }
  void fail(std::string what, Inputs in) {
    in.emplace_back("trial", std::to_string(index));
    rep.violations.push_back({std::move(what), seed, std::move(in)});
  }
  void unsure(std::string what, Inputs in) {
    in.emplace_back("trial", std::to_string(index));
    rep.inconclusive.push_back({std::move(what), seed, std::move(in)});
  }
  std::size_t uniform(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); }
  bool coin() { return uniform(0, 1) == 1; }
};

void merge_into(SuiteReport& dst, const SuiteReport& src) {
  dst.checked += src.checked;
  dst.skipped += src.skipped;
  dst.nodes += src.nodes;
  dst.capped = dst.capped || src.capped;
  dst.violations.insert(dst.violations.end(), src.violations.begin(), src.violations.end());
  dst.inconclusive.insert(dst.inconclusive.end(), src.inconclusive.begin(), src.inconclusive.end());
}

// ---------------------------------------------------------------------------
// Fixtures.

// F(a,b) *_C F(c,d) with z0 -> a^2, c^3 and z1 -> b^2, d c d^-1.
const Amalgam& suite_amalgam() {
  static const Amalgam G = [] {
    const Gen a("a"), b("b"), c("c"), d("d"), z0("z", 0), z1("z", 1);
    FactorSpec fa{"A", FactorKind::Free, {a, b}, {}};
    FactorSpec fb{"B", FactorKind::Free, {c, d}, {}};
    fa.edge_images.set(z0, Word(a, 2));
    fa.edge_images.set(z1, Word(b, 2));
    fb.edge_images.set(z0, Word(c, 3));
    fb.edge_images.set(z1, Word(c).conj(Word(d, -1)));
    return Amalgam({z0, z1}, {fa, fb});
  }();
  return G;
}

const OneRelatorGroup& onerelator() {
  static const OneRelatorGroup g = build_onerelator_amalgam();
  return g;
}

std::shared_ptr<const NonLoGroup> nonlo(int s, int m) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const NonLoGroup>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{s, m}];
  if (!slot) slot = std::make_shared<const NonLoGroup>(build_nonlo(sample_exponents(s, m, 0)));
  return slot;
}

// ---------------------------------------------------------------------------
// Word samplers.

Word random_word(Rng& rng, const std::vector<Gen>& al, std::size_t max_letters) {
  std::uniform_int_distribution<std::size_t> len(1, std::max<std::size_t>(1, max_letters));
  std::uniform_int_distribution<std::size_t> pick(0, al.size() - 1);
  std::vector<Letter> ls;
  for (std::size_t k = len(rng); k > 0; --k) ls.push_back({al[pick(rng)], pick(rng) % 2 ? 1 : -1});
  return reduce(ls);
}

// Alternating word over a, b with 1..max_syl syllables of exponent 1..max_exp in size.
Word random_ab(Rng& rng, std::size_t max_syl, std::int64_t max_exp) {
  const Gen a("a"), b("b");
  std::uniform_int_distribution<std::size_t> len(1, max_syl);
  std::uniform_int_distribution<std::int64_t> ex(1, max_exp);
  std::uniform_int_distribution<int> coin(0, 1);
  std::vector<Syllable> syl;
  bool use_a = coin(rng);
  for (std::size_t k = len(rng); k > 0; --k) {
    syl.push_back({use_a ? a : b, coin(rng) ? ex(rng) : -ex(rng)});
    use_a = !use_a;
  }
  return Word::from_syllables(syl);
}

// Element of F(a,b) outside C, biased towards sharing syllables with C.
Word random_outside_c(const NonLoGroup& g, Rng& rng) {
  std::uniform_int_distribution<int> mode(0, 2);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Word x;
    switch (mode(rng)) {
      case 0: x = random_ab(rng, 4, 4); break;
      case 1: x = random_c_element(g, 2, rng) * random_ab(rng, 2, 3); break;
      default: x = random_c_element(g, 2, rng) * random_ab(rng, 2, 3) * random_c_element(g, 2, rng); break;
    }
    if (!x.is_identity() && !g.C->contains(x)) return x;
  }
  throw std::runtime_error("could not sample outside C");
}

Word left_simplified_outside_c(const NonLoGroup& g, Rng& rng) {
  return c_simplify_left(g, random_outside_c(g, rng)).alpha;
}

std::vector<Word> random_tuple(Rng& rng, std::size_t n) {
  std::vector<Word> out;
  Word P;
  for (std::size_t j = 0; j < n; ++j) {
    Word w = random_ab(rng, 4, 2);
    if (!P.is_identity() && std::uniform_int_distribution<int>(0, 2)(rng) != 0) {
      const std::size_t r = std::uniform_int_distribution<std::size_t>(1, P.length())(rng);
      w = P.suffix(r).inverse() * w;
      if (w.is_identity()) w = random_ab(rng, 2, 2);
    }
    out.push_back(w);
    P *= w;
  }
  return out;
}

std::string join(const std::vector<Word>& ws) {
  std::string s;
  for (const auto& w : ws) s += (s.empty() ? "" : " | ") + w.str();
  return s;
}

std::string ref(const CompRef& r) { return "(" + std::to_string(r.first) + "," + std::to_string(r.second) + ")"; }

// ---------------------------------------------------------------------------
// Amalgam suites.

AmalgamElement rand_elem(Trial& t, std::size_t max_len = 4) {
  return random_element(suite_amalgam(), t.uniform(0, max_len), 3, t.rng);
}

void normal_form_soundness(Trial& t) {
  const Amalgam& G = suite_amalgam();
  std::vector<Component> raw;
  for (std::size_t k = t.uniform(1, 6); k > 0; --k) {
    const std::size_t f = t.uniform(0, 1);
    Word w = G.f_normal(f, random_word(t.rng, G.factor(f).alphabet, 4));
    raw.push_back({f, w});
  }
  const AmalgamElement x = G.normalize(raw);
  std::vector<Component> back = raw;
  for (auto it = raw.rbegin(); it != raw.rend(); ++it) back.push_back({it->factor, G.f_inv(it->factor, it->w)});
  t.check();
  if (!G.normalize(back).is_identity())
    t.fail("x x^-1 does not normalize to 1", {{"x", G.str(x)}});
  if (!(G.canonical(x) == x)) t.fail("normal form is not a fixed point of canonical", {{"x", G.str(x)}});
  if (!G.mul(x, G.inv(x)).is_identity()) t.fail("x * inv(x) != 1", {{"x", G.str(x)}});
  if (!G.equal(G.normalize(G.raw(x)), x)) t.fail("raw components do not normalize back", {{"x", G.str(x)}});
}

void index_vector_invariance(Trial& t) {
  const Amalgam& G = suite_amalgam();
  const AmalgamElement g = rand_elem(t);
  auto raw = G.raw(g);
  const auto& E = G.edge_alphabet();
  for (std::size_t j = 0; j + 1 < raw.size(); ++j) {
    const Word c = random_word(t.rng, E, 3);
    raw[j].w = G.f_mul(raw[j].factor, raw[j].w, G.from_edge(raw[j].factor, c));
    raw[j + 1].w = G.f_mul(raw[j + 1].factor, G.from_edge(raw[j + 1].factor, c.inverse()), raw[j + 1].w);
  }
  Tuple pieces;
  for (std::size_t j = 0; j < raw.size();) {
    const std::size_t len = t.uniform(1, raw.size() - j);
    pieces.push_back(G.normalize({raw.begin() + j, raw.begin() + j + len}));
    j += len;
  }
  const AmalgamElement h = G.product(pieces);
  t.check();
  if (!G.equal(g, h) || G.index_vector(g) != G.index_vector(h) || g.length() != h.length())
    t.fail("shuffled and rebracketed spelling changes the element or its index vector",
           {{"g", G.str(g)}, {"h", G.str(h)}});
}

void cancellation_oracle(Trial& t) {
  const Amalgam& G = suite_amalgam();
  const AmalgamElement g = rand_elem(t);
  AmalgamElement h = rand_elem(t);
  if (t.coin() && g.length() > 0) h = G.mul(G.inv(G.right_part(g, t.uniform(1, g.length()))), h);
  t.check();
  const auto k = G.cancellation_number(g, h), o = G.cancellation_number_oracle(g, h);
  if (k != o)
    t.fail("K differs from its oracle",
           {{"g", G.str(g)}, {"h", G.str(h)}, {"K", std::to_string(k)}, {"oracle", std::to_string(o)}});
}

void lemma_end_preserving(Trial& t) {
  const Amalgam& G = suite_amalgam();
  const AmalgamElement a = rand_elem(t);
  AmalgamElement b = rand_elem(t);
  if (t.coin() && a.length() > 0) b = G.mul(G.inv(G.right_part(a, t.uniform(1, a.length()))), b);
  if (a.length() == 0 && b.length() == 0) return t.skip();
  const std::size_t k = G.cancellation_number(a, b);
  const bool ep = G.end_preserving({a, b}, Side::Left);
  if (a.length() > 0) {
    t.check();
    if (ep != (k < a.length()))
      t.fail("left end-preserving does not match K < l(alpha)",
             {{"alpha", G.str(a)}, {"beta", G.str(b)}, {"K", std::to_string(k)}});
  }
  if (!ep) return;
  for (const auto& sp : G.factors(b, Side::Left)) {
    if (a.length() == 0 && sp.factor.length() == 0) continue;
    t.check();
    if (!G.end_preserving({a, sp.factor}, Side::Left))
      t.fail("alpha beta_1 is not left end-preserving for a left factor beta_1",
             {{"alpha", G.str(a)}, {"beta", G.str(b)}, {"beta_1", G.str(sp.factor)}});
  }
}

void length_subadditivity(Trial& t) {
  const Amalgam& G = suite_amalgam();
  const AmalgamElement x = rand_elem(t), y = rand_elem(t);
  t.check();
  if (G.mul(x, y).length() > x.length() + y.length())
    t.fail("l(xy) > l(x) + l(y)", {{"x", G.str(x)}, {"y", G.str(y)}});
  if (G.inv(x).length() != x.length()) t.fail("l(x^-1) != l(x)", {{"x", G.str(x)}});
}

// ---------------------------------------------------------------------------
// Tamed suites.

void prop_3_length_bound(Trial& t) {
  const Amalgam& G = suite_amalgam();
  SamplerConfig cfg;
  cfg.g_len_max = 3;
  cfg.word_len_max = 2;
  const std::size_t n = t.uniform(1, cfg.n_max);
  auto v = sample_tamed(G, n, cfg, t.rng);
  if (!v) {
    t.skip();
    return;
  }
  t.check();
  const auto lb = tamed_length_bound(G, *v);
  Inputs in{{"n", std::to_string(n)}, {"lhs", std::to_string(lb.lhs)}, {"rhs", std::to_string(lb.rhs)}};
  for (std::size_t i = 1; i <= n; ++i)
    in.emplace_back("t" + std::to_string(i) + "^g" + std::to_string(i), G.str(v->t(i)) + " ^ " + G.str(v->g(i)));
  if (!lb.holds) t.fail("tamed product shorter than l(g_1) + n + l(g_n)", in);
  if (conj_product(G, *v).length() < n) t.fail("tamed product shorter than n", in);
  const auto d = delta_factorize(G, *v);
  if (!d.all_reduced()) t.fail("delta factorization has a non-reduced step", in);
  if (!d.all_telescope()) t.fail("delta factorization does not telescope", in);
}

AmalgamElement factor_elem(Trial& t, std::size_t f) {
  return suite_amalgam().embed(f, random_outside(suite_amalgam(), f, 2, t.rng));
}

AmalgamElement edge_elem(Trial& t) {
  return suite_amalgam().edge_element(random_word(t.rng, suite_amalgam().edge_alphabet(), 2));
}

// The lemma is applied to tamed tuples, so l(t_i) = 1 and t_i^{g_i} is
// reduced; without that hypothesis it fails (see the unit tests).
void lemma_one_side_cancellable(Trial& t) {
  const Amalgam& G = suite_amalgam();
  const auto t2 = factor_elem(t, t.uniform(0, 1));
  AmalgamElement g1 = rand_elem(t, 3), g2 = rand_elem(t, 3), g3 = rand_elem(t, 3);
  for (int tries = 0; tries < 20 && !G.is_reduced({G.inv(g2), t2, g2}); ++tries) g2 = rand_elem(t, 3);
  if (!G.is_reduced({G.inv(g2), t2, g2})) return t.skip();
  const auto c = edge_elem(t);
  if (t.coin()) {
    // R g_2^-1 t_2 = c with g_1 = L R.
    const auto R = G.mul(G.mul(c, G.inv(t2)), g2);
    g1 = G.mul(rand_elem(t, 2), R);
  } else {
    // t_2 g_2 L = c with g_3^-1 = L R.
    const auto L = G.mul(G.mul(G.inv(g2), G.inv(t2)), c);
    g3 = G.inv(G.mul(L, rand_elem(t, 2)));
  }
  ConjTuple v{{{factor_elem(t, 0), g1}, {t2, g2}, {factor_elem(t, 1), g3}}};
  const auto res = cancellability(G, v, 2);
  const auto C2 = G.conj(t2, g2);
  Inputs in{{"g1", G.str(g1)}, {"t2", G.str(t2)}, {"g2", G.str(g2)}, {"g3", G.str(g3)}};
  if (!res.lhs && !res.rhs) {
    t.skip();
    return;
  }
  if (res.lhs) {
    t.check();
    if (G.mul(g1, C2).length() >= g1.length()) t.fail("LHS-cancellable but l(g_1 C_2) >= l(g_1)", in);
  }
  if (res.rhs) {
    t.check();
    if (G.mul(g3, G.inv(C2)).length() >= g3.length()) t.fail("RHS-cancellable but l(g_3 C_2^-1) >= l(g_3)", in);
  }
}

void prop_two_sided_cancellable(Trial& t) {
  const Amalgam& G = suite_amalgam();
  const auto g2 = rand_elem(t, 2);
  const auto t2 = factor_elem(t, t.uniform(0, 1));
  if (!G.is_reduced({G.inv(g2), t2, g2})) {
    t.skip();
    return;
  }
  const auto C2 = G.conj(t2, g2);
  // R_1 C_2 L_3 = c built backwards, then g_1 = L_1 R_1 and g_3^-1 = L_3 R_3.
  const auto L3 = rand_elem(t, 3);
  const auto R1 = G.mul(edge_elem(t), G.inv(G.mul(C2, L3)));
  const auto g1 = G.mul(rand_elem(t, 1), R1);
  const auto g3 = G.inv(G.mul(L3, rand_elem(t, 1)));
  ConjTuple v{{{factor_elem(t, 0), g1}, {t2, g2}, {factor_elem(t, 1), g3}}};
  const auto g1p = G.mul(g1, C2), g3p = G.mul(g3, G.inv(C2));
  const auto res = cancellability(G, v, 2);
  if (res.kind == Cancellable::None || g1p.length() < g1.length() || g3p.length() < g3.length()) {
    t.skip();
    return;
  }
  t.check();
  const bool ok = g1p.length() == g1.length() && g3p.length() == g3.length() && g1.length() > g2.length() &&
                  g3.length() > g2.length();
  if (!ok)
    t.fail("cancellable t_i without shortening does not force l(g_{i-1}') = l(g_{i-1}) > l(g_i) and the RHS analogue",
           {{"g1", G.str(g1)}, {"t2", G.str(t2)}, {"g2", G.str(g2)}, {"g3", G.str(g3)}});
}

// ---------------------------------------------------------------------------
// Generalized-torsion suites.

const std::vector<BsWitness>& bs_witnesses() {
  static const std::vector<BsWitness> ws = [] {
    std::vector<BsWitness> out;
    for (int m = 2; m <= 5; ++m) out.push_back(bs_commutator_witness(m));
    return out;
  }();
  return ws;
}

void gt_certificates(Trial& t) {
  const auto& w = bs_witnesses()[t.index % bs_witnesses().size()];
  const Amalgam& G = w.group;
  t.check();
  if (!verify_gt_certificate(G, w.cert)) {
    t.fail("stored certificate does not verify", {{"base", G.str(w.cert.base)}});
    return;
  }
  const auto x = random_element(G, t.uniform(0, 3), 2, t.rng);
  GtCertificate moved{G.conj(w.cert.base, x), {}};
  for (const auto& h : w.cert.conjugators) moved.conjugators.push_back(G.mul(G.inv(x), h));
  t.check();
  if (!verify_gt_certificate(G, moved))
    t.fail("certificate conjugated by x does not verify", {{"base", G.str(w.cert.base)}, {"x", G.str(x)}});
}

void nss_monotone(Trial& t) {
  const Amalgam& G = suite_amalgam();
  const std::vector<AmalgamElement> R{rand_elem(t, 2)};
  if (R[0].is_identity()) {
    t.skip();
    return;
  }
  SearchBounds small;
  small.radius = 1;
  small.max_n = 1;
  small.seed = t.seed;
  auto keys = [&](const BallResult& r) {
    std::set<std::string> out;
    for (const auto& e : r.elements) out.insert(G.str(e));
    return out;
  };
  const auto base = nss_ball(G, R, small);
  SearchBounds wider = small;
  if (t.coin())
    wider.radius = 2;
  else
    wider.max_n = 2;
  const auto big = nss_ball(G, R, wider);
  const auto again = nss_ball(G, R, small);
  t.check();
  const auto ks = keys(base), kb = keys(big);
  if (!std::includes(kb.begin(), kb.end(), ks.begin(), ks.end()))
    t.fail("nss_ball shrinks when a bound grows", {{"seed_element", G.str(R[0])}});
  std::vector<std::string> s1, s2;
  for (const auto& e : base.elements) s1.push_back(G.str(e));
  for (const auto& e : again.elements) s2.push_back(G.str(e));
  if (s1 != s2) t.fail("nss_ball is not deterministic", {{"seed_element", G.str(R[0])}});
}

// C = <b, b^a> has a-weight zero, so P = {a-weight > 0} is a normal
// subsemigroup of A missing C.
const Amalgam& weight_amalgam() {
  static const Amalgam G = [] {
    const Gen a("a"), b("b"), c("c"), d("d"), z0("z", 0), z1("z", 1);
    FactorSpec fa{"A", FactorKind::Free, {a, b}, {}};
    FactorSpec fb{"B", FactorKind::Free, {c, d}, {}};
    fa.edge_images.set(z0, Word(b));
    fa.edge_images.set(z1, Word(b).conj(Word(a)));
    fb.edge_images.set(z0, Word(c, 2));
    fb.edge_images.set(z1, Word(d, 3));
    return Amalgam({z0, z1}, {fa, fb});
  }();
  return G;
}

void factor_multimalnormal(Trial& t) {
  const Amalgam& G = weight_amalgam();
  const Gen a("a");
  const std::size_t n = t.uniform(1, 3);
  AmalgamElement T;
  Inputs in;
  for (std::size_t i = 0; i < n; ++i) {
    Word c = random_word(t.rng, G.factor(0).alphabet, 6);
    const std::int64_t w = weight(c, a);
    if (w <= 0) c *= Word(a, 1 - w + static_cast<std::int64_t>(t.uniform(0, 1)));
    AmalgamElement f;
    do f = random_element(G, t.uniform(1, 3), 2, t.rng);
    while (f.length() == 0 || (f.length() == 1 && f.comps[0].factor == 0));
    T = G.mul(T, G.conj(G.embed(0, c), f));
    in.emplace_back("c" + std::to_string(i + 1), c.str());
    in.emplace_back("f" + std::to_string(i + 1), G.str(f));
  }
  t.check();
  const bool in_a = T.length() == 0 || (T.length() == 1 && T.comps[0].factor == 0);
  if (in_a) t.fail("product of conjugates by elements outside A lands in A", in);
}

Word random_edge_word(Trial& t, const std::vector<Gen>& edge) {
  Word w;
  do w = random_word(t.rng, edge, 3);
  while (w.is_identity());
  return w;
}

void nss_intersection_onerelator(Trial& t) {
  const auto& o = onerelator();
  const Word alpha = random_edge_word(t, o.group.edge_alphabet());
  SearchBounds b;
  b.radius = 1;
  b.max_n = 2;
  b.seed = t.seed;
  merge_into(t.rep, nss_intersection_check(o.group, 0, {alpha}, b));
}

void multimalnormal_nss(Trial& t) {
  // A = F(a,b), C = <a>, C' = {a^j : j > 0}: NSS_A(C') meets C only in C'.
  const Gen a("a"), b("b");
  const std::vector<Gen> al{a, b};
  Word prod;
  Inputs in;
  for (std::size_t k = t.uniform(1, 3); k > 0; --k) {
    const Word h = t.coin() ? Word(a, static_cast<std::int64_t>(t.uniform(1, 2))) : random_word(t.rng, al, 3);
    const Word c(a, static_cast<std::int64_t>(t.uniform(1, 3)));
    prod *= c.conj(h);
    in.emplace_back("conjugate", c.str() + " ^ " + h.str());
  }
  const bool in_c = prod.length() == 1 && prod.syl(0).gen == a;
  if (!in_c) {
    t.skip();
    return;
  }
  t.check();
  if (prod.syl(0).exp <= 0) t.fail("element of NSS_A(C') in C but outside C'", in);
}

void family_magnus_cone(Trial& t) {
  const Gen a("a"), b("b");
  const std::vector<Gen> al{a, b};
  const VarMap vars = alphabet_vars(al);
  const Word x = random_word(t.rng, al, 6), y = random_word(t.rng, al, 6), h = random_word(t.rng, al, 4);
  if (x.is_identity()) {
    t.skip();
    return;
  }
  t.check();
  const int sx = magnus_sign(x, vars);
  Inputs in{{"x", x.str()}, {"y", y.str()}, {"h", h.str()}};
  if (sx == 0 || sx != -magnus_sign(x.inverse(), vars)) t.fail("cone and its inverse do not split x", in);
  if (magnus_sign(x.conj(h), vars) != sx) t.fail("cone is not conjugation invariant", in);
  if (!y.is_identity() && magnus_sign(y, vars) == sx && magnus_sign(x * y, vars) != sx)
    t.fail("cone is not closed under products", in);
}

void family_onerelator(Trial& t) {
  const auto& o = onerelator();
  const Word alpha = random_edge_word(t, o.group.edge_alphabet());
  SearchBounds b;
  b.radius = 1;
  b.max_n = 2;
  b.seed = t.seed;
  for (std::size_t f = 0; f < 2; ++f) merge_into(t.rep, nss_intersection_check(o.group, f, {alpha}, b));
}

// ---------------------------------------------------------------------------
// Magnus suites.

constexpr int kMagnusDegree = 5;

Word random_indexed(Trial& t, std::size_t max_letters = 8) {
  std::vector<Gen> al;
  for (std::int64_t i = 0; i <= 3; ++i) al.emplace_back("a", i);
  return random_word(t.rng, al, max_letters);
}

HomSpec c_basis() {
  HomSpec h;
  h.set(Gen("v", 0), onerelator_v0());
  h.set(Gen("v", 1), onerelator_v1());
  return h;
}

// alpha in C with both v-weights zero, or nullopt when the sample is trivial.
std::optional<Word> weight_zero_c(Trial& t) {
  const Gen v0("v", 0), v1("v", 1);
  const Word u = random_word(t.rng, {v0, v1}, 8);
  const Word fix = Word(v0, -weight(u, v0)) * Word(v1, -weight(u, v1));
  const Word alpha = apply_hom(c_basis(), u * fix);
  if (alpha.is_identity()) return std::nullopt;
  return alpha;
}

void magnus_homomorphism(Trial& t) {
  const Word u = random_indexed(t), v = random_indexed(t);
  t.check();
  if (!(mu(u * v, kMagnusDegree) == mu(u, kMagnusDegree) * mu(v, kMagnusDegree)))
    t.fail("mu(uv) != mu(u) mu(v)", {{"u", u.str()}, {"v", v.str()}});
}

void magnus_inverse(Trial& t) {
  const Word u = random_indexed(t);
  t.check();
  if (!(mu(u, kMagnusDegree) * mu(u.inverse(), kMagnusDegree) == Series::one(kMagnusDegree)))
    t.fail("mu(u) mu(u^-1) != 1", {{"u", u.str()}});
}

void magnus_degree1(Trial& t) {
  const Word u = random_indexed(t);
  Series expect(1);
  for (std::int64_t i = 0; i <= 3; ++i) expect.add({i}, weight(u, Gen("a", i)));
  t.check();
  if (!(mu(u, 1).homogeneous(1) == expect))
    t.fail("degree-1 part differs from the exponent sums", {{"u", u.str()}});
}

void magnus_conjugation(Trial& t) {
  const Word alpha = random_indexed(t, 6);
  const Word g = random_indexed(t, 4);
  if (alpha.is_identity()) {
    t.skip();
    return;
  }
  t.check();
  const auto L = leading_term(alpha), Lg = leading_term(alpha.conj(g));
  if (!L || !Lg || L->degree != Lg->degree || !(L->part == Lg->part))
    t.fail("L(alpha^g) != L(alpha)", {{"alpha", alpha.str()}, {"g", g.str()}});
}

void magnus_leading_vars(Trial& t) {
  const auto alpha = weight_zero_c(t);
  if (!alpha) {
    t.skip();
    return;
  }
  t.check();
  if (!check_c_leading_vars(*alpha, onerelator_v0(), onerelator_v1()))
    t.fail("X_0, X_1, X_2 do not all appear in L(alpha)", {{"alpha", alpha->str()}});
}

void magnus_annihilation_transfer(Trial& t) {
  Word alpha;
  if (t.coin()) {
    auto w = weight_zero_c(t);
    if (!w) {
      t.skip();
      return;
    }
    alpha = *w;
  } else {
    alpha = random_indexed(t, 6);
  }
  if (alpha.is_identity()) {
    t.skip();
    return;
  }
  std::vector<RelationSpec> rels{RelationSpec::zero_vars({0}), RelationSpec::identify({{1, 2}})};
  std::set<std::int64_t> z;
  for (std::int64_t i = 0; i <= 3; ++i)
    if (t.coin()) z.insert(i);
  if (!z.empty()) rels.push_back(RelationSpec::zero_vars(z));
  const auto L = leading_term(alpha);
  bool any = false;
  for (std::size_t k = 0; k < rels.size(); ++k) {
    if (!annihilates(rels[k], alpha)) continue;
    any = true;
    t.check();
    if (!annihilates(rels[k], *L))
      t.fail("relation annihilates alpha but not L(alpha)", {{"alpha", alpha.str()}, {"relation", std::to_string(k)}});
  }
  if (!any) t.skip();
}

void magnus_degree1_in_c(Trial& t) {
  const Gen v0("v", 0), v1("v", 1);
  const Word u = random_word(t.rng, {v0, v1}, 8);
  const Word alpha = apply_hom(c_basis(), u);
  const std::int64_t w0 = weight(u, v0), w1 = weight(u, v1);
  Series expect(1);
  expect.add({0}, w0);
  expect.add({2}, w1);
  expect.add({1}, -w1);
  t.check();
  if (!(mu(alpha, 1).homogeneous(1) == expect))
    t.fail("degree-1 part of an element of C is not w0 X_0 + w1 (X_2 - X_1)", {{"alpha", alpha.str()}});
}

// ---------------------------------------------------------------------------
// Case-study suites on the non-left-orderable amalgam.

struct Nonlo {
  std::shared_ptr<const NonLoGroup> g;
  std::size_t s;
};

Nonlo fixture(const Trial& t) { return {nonlo(t.opt.s, t.opt.m), static_cast<std::size_t>(t.opt.s)}; }

std::size_t K(const Word& g, const Word& h) { return syllable_cancellation(g, h); }

Word left_factor_of_c(Trial& t, const NonLoGroup& g) {
  const Word c = random_c_element(g, 2, t.rng);
  return c.prefix(t.uniform(0, c.length()));
}

Word right_factor_of_c(Trial& t, const NonLoGroup& g) {
  const Word c = random_c_element(g, 2, t.rng);
  return c.suffix(t.uniform(0, c.length()));
}

// beta outside C that often starts with a prefix of g^-1.
std::optional<Word> adversarial_outside(Trial& t, const NonLoGroup& G, const Word& g) {
  Word beta = random_outside_c(G, t.rng);
  if (t.coin()) beta = g.inverse().prefix(t.uniform(0, g.length())) * random_ab(t.rng, 2, 3);
  if (beta.is_identity() || G.C->contains(beta)) return std::nullopt;
  return beta;
}

void lemma_k_beta_h(Trial& t) {
  const auto [G, s] = fixture(t);
  const Word g = random_c_element(*G, 3, t.rng);
  const auto beta = adversarial_outside(t, *G, g);
  if (!beta) {
    t.skip();
    return;
  }
  const Word h = left_factor_of_c(t, *G);
  t.check();
  if (K(g, *beta * h) > K(g, *beta) + 1)
    t.fail("K(g, beta h) > K(g, beta) + 1", {{"g", g.str()}, {"beta", beta->str()}, {"h", h.str()}});
}

// alpha outside C, often of the form p y p^-1 with p a prefix of g^-1.
std::optional<Word> adversarial_alpha(Trial& t, const NonLoGroup& G, const Word& g) {
  Word alpha = random_outside_c(G, t.rng);
  if (t.coin()) {
    const Word p = g.inverse().prefix(t.uniform(0, g.length()));
    alpha = p * random_ab(t.rng, 2, 3) * p.inverse();
  }
  if (alpha.is_identity() || G.C->contains(alpha)) return std::nullopt;
  return alpha;
}

void lemma_k_alpha_power(Trial& t) {
  const auto [G, s] = fixture(t);
  const Word g = random_c_element(*G, 3, t.rng);
  const auto alpha = adversarial_alpha(t, *G, g);
  if (!alpha) {
    t.skip();
    return;
  }
  const auto n = static_cast<std::int64_t>(t.uniform(2, 5));
  const Word an = alpha->pow(n);
  Inputs in{{"g", g.str()}, {"alpha", alpha->str()}, {"n", std::to_string(n)}};
  t.check();
  if (G->C->contains(an)) t.fail("alpha^n lies in C", in);
  if (K(g, an) > K(g, *alpha) + 1) t.fail("K(g, alpha^n) > K(g, alpha) + 1", in);
}

void cor_k_alpha_power_h(Trial& t) {
  const auto [G, s] = fixture(t);
  const Word g = random_c_element(*G, 3, t.rng);
  const auto alpha = adversarial_alpha(t, *G, g);
  if (!alpha) {
    t.skip();
    return;
  }
  const auto n = static_cast<std::int64_t>(t.uniform(1, 4));
  const Word h = left_factor_of_c(t, *G);
  Inputs in{{"g", g.str()}, {"alpha", alpha->str()}, {"n", std::to_string(n)}, {"h", h.str()}};
  t.check();
  if (K(g, alpha->pow(n) * h) > K(g, *alpha) + 2) t.fail("K(g, alpha^n h) > K(g, alpha) + 2", in);
  if (K(g, *alpha) > Lambda(*G, *alpha)) t.fail("K(g, alpha) > Lambda(alpha)", in);
}

void prop_two_sided_bound(Trial& t) {
  const auto [G, s] = fixture(t);
  const auto pm = G->basis_pm();
  Word g, alpha;
  if (t.coin()) {
    g = pm[t.uniform(0, pm.size() - 1)];
    const std::size_t i = t.coin() ? s - 1 : s - 2, j = 2 * s - 3 - i;
    alpha = g.suffix(j).inverse() * g.block(2 * s - j).inverse() * g.block(i + 1).inverse() * g.prefix(i).inverse();
  } else {
    g = random_c_element(*G, 2, t.rng);
    alpha = c_simplify(*G, random_outside_c(*G, t.rng)).alpha;
  }
  if (g.is_identity() || G->C->contains(alpha) || !left_c_simplified(*G, alpha) || !right_c_simplified(*G, alpha)) {
    t.skip();
    return;
  }
  // Right factors of c g and left factors of g c, which can extend the cancellation.
  auto right_of = [&](const Word& w) { return w.suffix(t.uniform(0, w.length())); };
  auto left_of = [&](const Word& w) { return w.prefix(t.uniform(0, w.length())); };
  const Word h2 = t.coin() ? right_of(t.coin() ? g : random_c_element(*G, 1, t.rng) * g) : right_factor_of_c(t, *G);
  const Word h1 = t.coin() ? left_of(t.coin() ? g : g * random_c_element(*G, 1, t.rng)) : left_factor_of_c(t, *G);
  const auto m = static_cast<std::int64_t>(t.coin() ? 1 : t.uniform(1, 3));
  const auto n = static_cast<std::int64_t>(t.coin() ? 1 : t.uniform(1, 3));
  const std::size_t lhs = K(h2 * alpha.pow(m), g) + K(g, alpha.pow(n) * h1);
  if (lhs + 2 <= g.length()) {
    t.skip();
    return;
  }
  t.check();
  Inputs in{{"g", g.str()}, {"alpha", alpha.str()}, {"h1", h1.str()}, {"h2", h2.str()},
            {"m", std::to_string(m)}, {"n", std::to_string(n)}};
  if (std::find(pm.begin(), pm.end(), g) == pm.end()) {
    t.fail("two-sided cancellation exceeds l(g) - 2 for g outside S and S^-1", in);
    return;
  }
  const Word mid = g.suffix(s) * alpha * g.prefix(s);
  if (!(mid == g.block(s) || mid == g.block(s + 1))) t.fail("R_s(g) alpha L_s(g) is not B_s(g) or B_{s+1}(g)", in);
}

void prefix_invariant(Trial& t) {
  const auto [G, s] = fixture(t);
  const Word c = random_c_element(*G, 4, t.rng);
  for (std::size_t i = 1; i <= c.length(); ++i) {
    const Word E = c.block(i);
    t.check();
    try {
      const Word lhs = prefix_of(*G, E).p * E * prefix_of(*G, E.inverse()).p.inverse();
      if (!G->C->contains(lhs)) t.fail("p(E) E p(E^-1)^-1 is outside C", {{"c", c.str()}, {"E", E.str()}});
    } catch (const std::exception& ex) {
      t.fail(std::string("prefix failed: ") + ex.what(), {{"c", c.str()}, {"E", E.str()}});
    }
  }
}

void lemma_prefix(Trial& t) {
  const auto [G, s] = fixture(t);
  const Word c = random_c_element(*G, 4, t.rng);
  const std::size_t n = c.length();
  for (std::size_t i = 1; i <= n; ++i) {
    t.check();
    try {
      const Word D = c.prefix(i);
      if (!G->C->contains(D.prefix(i - 1) * prefix_of(*G, D.block(i)).p.inverse()))
        t.fail("D_1..D_{i-1} p(D_i)^-1 is outside C", {{"c", c.str()}, {"i", std::to_string(i)}});
      const Word E = c.suffix(i);
      if (!G->C->contains(prefix_of(*G, E.block(1)).p * E))
        t.fail("p(E_i) E_i..E_1 is outside C", {{"c", c.str()}, {"i", std::to_string(i)}});
    } catch (const std::exception& ex) {
      t.fail(std::string("prefix failed: ") + ex.what(), {{"c", c.str()}, {"i", std::to_string(i)}});
    }
  }
}

void c_simplify_suite(Trial& t) {
  const auto [G, s] = fixture(t);
  const Word x = random_outside_c(*G, t.rng);
  const auto r = c_simplify(*G, x);
  t.check();
  Inputs in{{"x", x.str()}, {"alpha", r.alpha.str()}};
  if (!(r.c1 * r.alpha * r.c2 == x)) t.fail("c1 alpha c2 != x", in);
  if (!G->C->contains(r.c1) || !G->C->contains(r.c2)) t.fail("c1 or c2 outside C", in);
  if (!left_c_simplified(*G, r.alpha) || !right_c_simplified(*G, r.alpha)) t.fail("alpha is not C-simplified", in);
  if (r.alpha.length() > x.length()) t.fail("l(alpha) > l(x)", in);
  if (Lambda(*G, r.alpha) > s || Pcompat(*G, r.alpha) > s) t.fail("Lambda or P exceeds s", in);
}

void standard_form_suite(Trial& t) {
  const auto [G, s] = fixture(t);
  const Word c = random_c_element(*G, 3, t.rng);
  Word x = random_outside_c(*G, t.rng);
  if (t.coin()) x = c.suffix(t.uniform(1, c.length())).inverse() * random_ab(t.rng, 2, 3);
  if (x.is_identity() || G->C->contains(x)) {
    t.skip();
    return;
  }
  const Word g = c_simplify_left(*G, x).alpha;
  const auto f = standard_form(*G, c, g);
  t.check();
  Inputs in{{"c", c.str()}, {"g", g.str()}};
  for (const auto& e : f.failures) t.fail("standard form: " + e, in);
  for (const auto& e : check_local_property(*G, g, f)) t.fail("local property: " + e, in);
}

std::vector<Word> slice(const std::vector<Word>& v, std::size_t from, std::size_t to) {
  return {v.begin() + static_cast<std::ptrdiff_t>(from - 1), v.begin() + static_cast<std::ptrdiff_t>(to)};
}

void lfp_multiplicativity(Trial& t) {
  const auto gs = random_tuple(t.rng, t.uniform(3, 5));
  const std::size_t n = gs.size();
  const auto full_l = LfpTrace::left(gs), full_r = LfpTrace::right(gs);
  for (std::size_t k = 2; k < n; ++k) {
    const auto pre_l = LfpTrace::left(slice(gs, 1, k)), post_l = LfpTrace::left(slice(gs, k, n));
    const auto pre_r = LfpTrace::right(slice(gs, 1, k)), post_r = LfpTrace::right(slice(gs, k, n));
    for (std::size_t p = 1; p <= gs[k - 1].length(); ++p) {
      t.check();
      if (full_l.is_unaltered(k, p) != (pre_l.is_unaltered(k, p) && post_l.is_unaltered(1, p)))
        t.fail("left-first unalteredness is not multiplicative", {{"tuple", join(gs)}, {"component", ref({k, p})}});
      if (full_r.is_unaltered(k, p) != (pre_r.is_unaltered(k, p) && post_r.is_unaltered(1, p)))
        t.fail("right-first unalteredness is not multiplicative", {{"tuple", join(gs)}, {"component", ref({k, p})}});
    }
  }
}

void lfp_restriction(Trial& t) {
  const auto gs = random_tuple(t.rng, t.uniform(2, 5));
  const auto full = LfpTrace::left(gs);
  const auto pairs = full.cancellations();
  if (pairs.empty()) {
    t.skip();
    return;
  }
  for (const auto& [x, y] : pairs) {
    t.check();
    const auto sub = LfpTrace::left(slice(gs, x.first, y.first));
    if (!sub.cancels({1, x.second}, {y.first - x.first + 1, y.second}))
      t.fail("cancellation does not survive restriction", {{"tuple", join(gs)}, {"x", ref(x)}, {"y", ref(y)}});
  }
}

void lfp_pair_cancellation(Trial& t) {
  const auto gs = random_tuple(t.rng, t.uniform(2, 5));
  const auto tr = LfpTrace::left(gs);
  t.check();
  if (!tr.consistent()) t.fail("unaltered components do not survive in order", {{"tuple", join(gs)}});
  for (const auto& e : check_pair_cancellation(tr)) t.fail(e, {{"tuple", join(gs)}});
}

struct Conjugate {
  Word c, g, C;
  StandardForm f;
};

// (c_i, g_i) with g_i left C-simplified; with probability 1/2 two entries share
// their conjugator and the later c starts by undoing the earlier one.
std::vector<Conjugate> conjugate_tuple(Trial& t, const NonLoGroup& G, std::size_t n) {
  std::vector<Conjugate> out;
  for (std::size_t i = 0; i < n; ++i) {
    Conjugate e;
    e.c = random_c_element(G, 2, t.rng);
    e.g = left_simplified_outside_c(G, t.rng);
    out.push_back(std::move(e));
  }
  if (n >= 2 && t.coin()) {
    const std::size_t r = t.uniform(0, n - 2), q = t.uniform(r + 1, n - 1);
    out[q].g = out[r].g;
    Word c = out[r].c.inverse() * (t.coin() ? random_c_element(G, 1, t.rng) : Word());
    if (!c.is_identity()) out[q].c = c;
  }
  for (auto& e : out) {
    e.C = e.c.conj(e.g);
    e.f = standard_form(G, e.c, e.g);
  }
  return out;
}

void block_cancellation(Trial& t) {
  const auto [G, s] = fixture(t);
  const auto cs = conjugate_tuple(t, *G, t.uniform(2, 4));
  std::vector<Word> Cs;
  for (const auto& e : cs) Cs.push_back(e.C);
  const auto tr = LfpTrace::left(Cs);
  bool any = false;
  auto in_mu = [&](const CompRef& x) {
    const auto& f = cs[x.first - 1].f;
    return x.second > f.lambda.length() && x.second <= f.lambda.length() + f.mu.length();
  };
  for (const auto& [x, y] : tr.cancellations()) {
    if (!in_mu(x) || !in_mu(y)) continue;
    any = true;
    t.check();
    const std::size_t r = x.first, q = y.first;
    const Word& Cr = Cs[r - 1];
    const Word& Ct = Cs[q - 1];
    Word mid;
    for (std::size_t k = r + 1; k < q; ++k) mid *= Cs[k - 1];
    Inputs in{{"tuple", join(Cs)}, {"x", ref(x)}, {"y", ref(y)}};
    const bool hyp = (Cr.block(x.second) * Ct.block(y.second)).is_identity() &&
                     (Cr.range(x.second, Cr.length()) * mid * Ct.prefix(y.second)).is_identity();
    if (!hyp) {
      t.fail("tracer cancellation does not satisfy the block identity", in);
      continue;
    }
    const Word crt = cs[r - 1].g * mid * cs[q - 1].g.inverse();
    if (!G->C->contains(crt)) {
      t.fail("c_rt = g_r C_{r+1}..C_{t-1} g_t^-1 is outside C", in);
      continue;
    }
    const Word cr2 = cs[r - 1].c * cs[q - 1].c.conj(crt.inverse());
    if (!G->C->contains(cr2) || !(Cr * mid * Ct == cr2.conj(cs[r - 1].g) * mid))
      t.fail("shortening identity C_r..C_t = C_r' C_{r+1}..C_{t-1} fails", in);
  }
  if (!any) t.skip();
}

void claim_a(Trial& t) {
  const auto [G, s] = fixture(t);
  const std::size_t n = t.uniform(2, 4);
  const auto cs = conjugate_tuple(t, *G, n);
  std::vector<Word> Cs;
  for (const auto& e : cs) Cs.push_back(e.C);
  auto Pi = [&](std::size_t r, std::size_t q) {
    Word w;
    for (std::size_t k = r; k <= q; ++k) w *= Cs[k - 1];
    return w;
  };
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t q = r + 1; q <= n; ++q) {
      Inputs in{{"tuple", join(Cs)}, {"r", std::to_string(r)}, {"t", std::to_string(q)}};
      // First inequality, and the length drop that its failure would give.
      const Word& gr = cs[r - 1].f.gamma;
      const Word P = Pi(r + 1, q);
      if ((gr * P).length() + 1 >= gr.length()) {
        t.check();
      } else {
        t.skip();
        const Word Cr2 = Cs[r - 1].conj(P);
        if (Cr2.length() >= Cs[r - 1].length()) t.fail("claim fails and C_r^Pi is not shorter than C_r", in);
      }
      const Word& gt = cs[q - 1].f.gamma;
      const Word Q = Pi(r, q - 1);
      if ((Q * gt.inverse()).length() + 1 >= gt.length()) {
        t.check();
      } else {
        t.skip();
        const Word Ct2 = Cs[q - 1].conj(Q.inverse());
        if (Ct2.length() >= Cs[q - 1].length()) t.fail("claim fails and C_t^{Pi^-1} is not shorter than C_t", in);
      }
    }
}

void rtf_sandwich(Trial& t) {
  const auto [G, s] = fixture(t);
  const Word g = t.coin() ? random_outside_c(*G, t.rng) : c_simplify(*G, random_outside_c(*G, t.rng)).alpha;
  const std::size_t k = t.uniform(1, 4);
  Word prod;
  Inputs in{{"g", g.str()}};
  for (std::size_t i = 0; i < k; ++i) {
    const Word h = t.uniform(0, 4) == 0 ? Word() : random_c_element(*G, 2, t.rng);
    prod *= g * h;
    in.emplace_back("h" + std::to_string(i + 1), h.str());
  }
  t.check();
  if (prod.is_identity()) t.fail("g h_1 ... g h_k = 1 with g outside C", in);
}

// ---------------------------------------------------------------------------
// Registry.

using TrialFn = std::function<void(Trial&)>;
using BatchFn = std::function<void(SuiteReport&, std::size_t, std::uint64_t, const SuiteOptions&)>;

struct Entry {
  TrialFn trial;
  BatchFn batch;
};

void small_cancellation_batch(SuiteReport& rep, std::size_t trials, std::uint64_t seed, const SuiteOptions& opt) {
  const auto G = nonlo(opt.s, opt.m);
  const auto r = small_cancellation_report(*G, trials, seed);
  rep.checked = r.pairs + r.products + r.prefixes;
  for (const auto& f : r.failures) rep.violations.push_back({f, seed, {}});
  const std::size_t total = r.pair_failures + r.product_failures + r.prefix_failures;
  if (total > r.failures.size())
    rep.violations.push_back({std::to_string(total - r.failures.size()) + " further failures", seed, {}});
}

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = [] {
    std::map<std::string, Entry> m;
    auto add = [&](const char* name, TrialFn f) { m[name] = Entry{std::move(f), nullptr}; };
    add("normal_form_soundness", normal_form_soundness);
    add("index_vector_invariance", index_vector_invariance);
    add("cancellation_oracle", cancellation_oracle);
    add("lemma_end_preserving", lemma_end_preserving);
    add("length_subadditivity", length_subadditivity);
    add("prop_3_length_bound", prop_3_length_bound);
    add("lemma_one_side_cancellable", lemma_one_side_cancellable);
    add("prop_two_sided_cancellable", prop_two_sided_cancellable);
    add("gt_certificates", gt_certificates);
    add("nss_monotone", nss_monotone);
    add("factor_multimalnormal", factor_multimalnormal);
    add("nss_intersection_onerelator", nss_intersection_onerelator);
    add("multimalnormal_nss", multimalnormal_nss);
    add("family_magnus_cone", family_magnus_cone);
    add("family_onerelator", family_onerelator);
    add("magnus_homomorphism", magnus_homomorphism);
    add("magnus_inverse", magnus_inverse);
    add("magnus_degree1", magnus_degree1);
    add("magnus_conjugation", magnus_conjugation);
    add("magnus_leading_vars", magnus_leading_vars);
    add("magnus_annihilation_transfer", magnus_annihilation_transfer);
    add("magnus_degree1_in_C", magnus_degree1_in_c);
    m["lemma_small_cancellation"] = Entry{nullptr, small_cancellation_batch};
    add("lemma_K_beta_h", lemma_k_beta_h);
    add("lemma_K_alpha_power", lemma_k_alpha_power);
    add("cor_K_alpha_power_h", cor_k_alpha_power_h);
    add("prop_two_sided_bound", prop_two_sided_bound);
    add("prefix_invariant", prefix_invariant);
    add("lemma_prefix", lemma_prefix);
    add("c_simplify", c_simplify_suite);
    add("standard_form", standard_form_suite);
    add("lfp_multiplicativity", lfp_multiplicativity);
    add("lfp_restriction", lfp_restriction);
    add("lfp_pair_cancellation", lfp_pair_cancellation);
    add("block_cancellation", block_cancellation);
    add("claim_a", claim_a);
    add("rtf_sandwich", rtf_sandwich);
    return m;
  }();
  return r;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, e] : registry()) out.push_back(name);
  return out;
}

SuiteReport run_suite(const std::string& name, std::size_t trials, std::uint64_t seed, const SuiteOptions& opt) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown suite '" + name + "'");
  if (opt.s < 10 || opt.m < 8) throw std::invalid_argument("suites need s >= 10 and m >= 8");
  SuiteReport rep;
  rep.name = name;
  rep.trials = trials;
  rep.params = {{"seed", std::to_string(seed)},
                {"s", std::to_string(opt.s)},
                {"m", std::to_string(opt.m)},
                {"x", std::to_string(opt.x)}};
  if (trials == 0) return rep;
  if (it->second.batch) {
    it->second.batch(rep, trials, seed, opt);
    return rep;
  }
  for (std::size_t i = 0; i < trials; ++i) {
    const std::uint64_t ts = trial_seed(seed, i);
    Trial t{rep, Rng(ts), ts, i, opt};
    try {
      it->second.trial(t);
    } catch (const std::exception& ex) {
      t.fail(std::string("exception: ") + ex.what(), {});
    }
  }
  return rep;
}

}  // namespace agt
