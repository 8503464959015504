// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "agt/amalgam.hpp"
#include "agt/casestudy.hpp"
#include "agt/gentorsion.hpp"
#include "agt/magnus.hpp"
#include "agt/stallings.hpp"
#include "agt/tamed.hpp"
#include "agt/word.hpp"

using namespace agt;

namespace {

constexpr std::uint64_t kSeed = 20240501;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<Outcome()> run;
};

Word W(const std::string& s) { return Word::parse(s); }
Word a(std::int64_t i, std::int64_t e = 1) { return Word(Gen("a", i), e); }

// Cancelled syllables at the junction of u v, read off the syllable lists.
std::size_t junction_cancellation(const Word& u, const Word& v) {
  std::size_t k = 0;
  while (k < u.length() && k < v.length()) {
    const auto& x = u.syl(u.length() - 1 - k);
    const auto& y = v.syl(k);
    if (!(x.gen == y.gen) || x.exp != -y.exp) break;
    ++k;
  }
  return k;
}

// ---------------------------------------------------------------------------

Outcome perfectness() {
  Outcome o;
  const auto inv = abelianize_snf(build_w_presentation());
  o.require(inv.free_rank == 0, "free rank " + std::to_string(inv.free_rank));
  o.require(inv.torsion.empty(), "nontrivial torsion " + inv.str());
  for (const auto& d : inv.invariant_factors) o.require(d == 1, "invariant factor " + d.str());
  o.require(inv.trivial(), "abelianization " + inv.str());
  return o;
}

Outcome certificate_chain() {
  Outcome o;
  const Word r = gamma_relator();
  const Word alpha = a(0) * a(2) * a(1) * (a(0) * a(2)).inverse() * a(1, -1) * a(0) * a(2);
  const auto aw = gamma_alpha_witness();
  o.require(aw.target == alpha, "alpha witness target differs");
  o.require(r.inverse().conj(a(0) * a(2)) == alpha, "alpha != (r^-1)^{a0 a2}");
  o.require(verify_ncl_witness({r}, aw), "alpha witness rejected");

  const Word beta = a(2).conj((a(1) * a(3)).inverse()) * a(1).conj((a(0) * a(2)).inverse()) * a(0).conj(a(1)) * a(3);
  const auto bw = gamma_beta_witness();
  o.require(bw.target == beta, "beta witness target differs");
  o.require(ncl_product(gamma_beta_relators(), bw) == beta, "beta product does not reduce to beta");
  o.require(verify_ncl_witness(gamma_beta_relators(), bw), "beta witness rejected");
  return o;
}

Outcome worked_example() {
  Outcome o;
  const Amalgam G({}, {{"A", FactorKind::Free, {Gen("a")}, {}}, {"B", FactorKind::Free, {Gen("b")}, {}}});
  const auto g1 = G.parse("[A: a]"), g2 = G.parse("[A: a^-1][B: b]"), g3 = G.parse("[B: b^-1][A: a]");
  o.require(G.end_preserving({g1, g2, g3}, Side::Both), "(g1, g2, g3) not end-preserving");
  o.require(G.end_preserving({g1, G.mul(g2, g3)}, Side::Both), "(g1, g2 g3) not end-preserving");
  o.require(!G.end_preserving({G.mul(g1, g2), g3}, Side::Left), "(g1 g2, g3) left end-preserving");
  return o;
}

Outcome bs_witness(int m) {
  Outcome o;
  const auto w = bs_commutator_witness(m);
  o.require(w.cert.conjugators.size() == static_cast<std::size_t>(m), "certificate length differs from m");
  o.require(verify_gt_certificate(w.group, w.cert), "certificate rejected");
  return o;
}

Outcome bergman() {
  Outcome o;
  const Gen z("z");
  FactorSpec A{"A", FactorKind::Free, {Gen("a")}, {}}, B{"B", FactorKind::Free, {Gen("b")}, {}};
  A.edge_images.set(z, W("a^2"));
  B.edge_images.set(z, W("b"));
  const Amalgam D = double_of(Amalgam({z}, {A, B}), 0);
  const auto cert = bergman_witness(D, {W("a"), {Word{}, Word{}}});
  o.require(verify_gt_certificate(D, cert), "certificate rejected");
  return o;
}

Outcome small_cancellation() {
  Outcome o;
  const auto g = build_nonlo(sample_exponents(10, 8, 0));
  const auto rep = small_cancellation_report(g, 20000, kSeed);
  o.require(rep.ok(), rep.failures.empty() ? "report failed" : rep.failures.front());
  o.require(rep.pairs == 240, "pair count " + std::to_string(rep.pairs));
  // Independent pairwise pass over S and S^-1.
  const auto pm = g.basis_pm();
  std::size_t pairs = 0;
  for (const auto& u : pm)
    for (const auto& v : pm) {
      if ((u * v).is_identity()) continue;
      ++pairs;
      o.require(junction_cancellation(u, v) == 0, "K(u, v) > 0 for " + u.str() + " | " + v.str());
      o.require((u * v).length() >= 39, "l(uv) < 39");
    }
  o.require(pairs == 240, "independent pair count " + std::to_string(pairs));
  // Products of k <= 5 generators without adjacent inverse pairs.
  std::mt19937_64 rng(kSeed);
  const std::size_t m = g.alpha.size();
  for (int t = 0; t < 20000 && o.ok; ++t) {
    const std::size_t k = 1 + rng() % 5;
    Word prod;
    std::size_t prev = pm.size();
    for (std::size_t j = 0; j < k;) {
      const std::size_t u = rng() % pm.size();
      if (prev < pm.size() && (u + m == prev || prev + m == u)) continue;
      prod *= pm[u];
      prev = u;
      ++j;
    }
    o.require(prod.length() >= 2 * k * 10 - (k - 1), "short product of " + std::to_string(k) + " generators");
  }
  return o;
}

Outcome witnesses() {
  Outcome o;
  const auto g = build_nonlo(sample_exponents(10, 8, 0));
  const auto checks = verify_nonlo_witnesses(g);
  o.require(checks.size() == 8, "expected 8 witnesses, got " + std::to_string(checks.size()));
  for (const auto& c : checks) {
    o.require(c.identity, "witness " + std::to_string(c.index) + " is not the identity");
    o.require(c.signs, "witness " + std::to_string(c.index) + " letters " + c.letters + " not in " + c.expected);
  }
  return o;
}

Outcome tamed_bound() {
  Outcome o;
  const Gen z0("z", 0), z1("z", 1);
  FactorSpec A{"A", FactorKind::Free, {Gen("a"), Gen("b")}, {}}, B{"B", FactorKind::Free, {Gen("c"), Gen("d")}, {}};
  A.edge_images.set(z0, W("a^2"));
  A.edge_images.set(z1, W("b^2"));
  B.edge_images.set(z0, W("c^3"));
  B.edge_images.set(z1, W("d c d^-1"));
  const Amalgam G({z0, z1}, {A, B});
  std::mt19937_64 rng(kSeed);
  const SamplerConfig cfg;
  std::size_t sampled = 0, attempts = 0;
  while (sampled < 10000 && attempts < 20000 && o.ok) {
    ++attempts;
    const std::size_t n = 1 + rng() % cfg.n_max;
    const auto v = sample_tamed(G, n, cfg, rng);
    if (!v) continue;
    ++sampled;
    const auto T = conj_product(G, *v);
    o.require(T.length() >= v->g(1).length() + n + v->g(n).length(), "l(T) below the bound");
    o.require(tamed_length_bound(G, *v).holds, "library bound disagrees");
    const auto d = delta_factorize(G, *v);
    o.require(d.all_reduced(), "non-reduced delta step");
    o.require(d.all_telescope(), "delta steps do not telescope");
  }
  o.require(sampled >= 10000, "only " + std::to_string(sampled) + " tamed tuples sampled");
  return o;
}

void suite_clean(Outcome& o, const std::string& name, std::size_t trials, std::size_t min_checked) {
  const auto r = run_suite(name, trials, kSeed);
  o.require(r.violations.empty(), name + ": " + std::to_string(r.violations.size()) + " violations");
  o.require(r.checked >= min_checked, name + ": only " + std::to_string(r.checked) + " checked");
}

Outcome magnus() {
  Outcome o;
  suite_clean(o, "magnus_homomorphism", 10000, 10000);
  suite_clean(o, "magnus_inverse", 10000, 10000);
  suite_clean(o, "magnus_degree1", 10000, 10000);
  suite_clean(o, "magnus_degree1_in_C", 10000, 10000);
  suite_clean(o, "magnus_conjugation", 10000, 9000);
  // Weight-zero samples are rejection-drawn; roughly half the trials check.
  suite_clean(o, "magnus_leading_vars", 1000, 200);
  return o;
}

Outcome bounded_search() {
  Outcome o;
  const auto g = build_nonlo(sample_exponents(10, 8, 0));
  const std::vector<Gen> ab{Gen("a"), Gen("b")};
  SearchBounds b;
  b.radius = 3;
  b.max_n = 3;
  b.seed = kSeed;
  const auto rtf = check_rtf(ab, *g.C, b);
  o.require(rtf.violations.empty() && !rtf.capped, "rtf: exit " + std::to_string(rtf.exit_code()));
  const auto mm = check_multimalnormal(ab, *g.C, {g.alpha.front()}, b);
  o.require(mm.violations.empty() && !mm.capped, "multimalnormal: exit " + std::to_string(mm.exit_code()));

  const auto one = build_onerelator_amalgam();
  std::mt19937_64 rng(kSeed);
  const auto& edge = one.group.edge_alphabet();
  std::vector<Word> alphas;
  while (alphas.size() < 20) {
    Word w;
    for (int k = 1 + rng() % 3; k > 0; --k) w *= Word(edge[rng() % edge.size()], (rng() & 1) ? 1 : -1);
    if (!w.is_identity()) alphas.push_back(w);
  }
  SearchBounds nb;
  nb.radius = 2;
  nb.max_n = 2;
  nb.seed = kSeed;
  const auto nss = nss_intersection_check(one.group, 0, alphas, nb);
  o.require(nss.violations.empty(), "nss intersection: " + std::to_string(nss.violations.size()) + " violations");
  std::ostringstream ss;
  ss << "rtf nodes " << rtf.nodes << ", mm nodes " << mm.nodes << ", nss checked " << nss.checked;
  if (o.ok) o.detail = ss.str();
  return o;
}

Outcome oracle_equivalences() {
  Outcome o;
  suite_clean(o, "cancellation_oracle", 10000, 10000);
  suite_clean(o, "normal_form_soundness", 2000, 2000);

  // Representative shuffles: move edge words across every junction.
  const Gen z0("z", 0), z1("z", 1);
  FactorSpec A{"A", FactorKind::Free, {Gen("a"), Gen("b")}, {}}, B{"B", FactorKind::Free, {Gen("c"), Gen("d")}, {}};
  A.edge_images.set(z0, W("a^2"));
  A.edge_images.set(z1, W("b^2"));
  B.edge_images.set(z0, W("c^3"));
  B.edge_images.set(z1, W("d c d^-1"));
  const Amalgam G({z0, z1}, {A, B});
  std::mt19937_64 rng(kSeed);
  for (int t = 0; t < 5000 && o.ok; ++t) {
    const auto x = random_element(G, rng() % 6, 3, rng);
    auto raw = G.raw(x);
    for (std::size_t j = 0; j + 1 < raw.size(); ++j) {
      Word c;
      for (int k = rng() % 4; k > 0; --k) c *= Word((rng() & 1) ? z0 : z1, (rng() & 1) ? 1 : -1);
      raw[j].w = G.f_mul(raw[j].factor, raw[j].w, G.from_edge(raw[j].factor, c));
      raw[j + 1].w = G.f_mul(raw[j + 1].factor, G.from_edge(raw[j + 1].factor, c.inverse()), raw[j + 1].w);
    }
    const auto y = G.normalize(raw);
    o.require(G.mul(x, G.inv(y)).is_identity(), "x y^-1 != 1 for " + G.str(x));
    o.require(G.index_vector(x) == G.index_vector(y), "index vector moved for " + G.str(x));
  }

  // prefix_acceptable against enumerated short elements.
  const std::vector<std::vector<Word>> cases{{W("a^2 b"), W("b a^3")}, {W("a b a^-1"), W("b^2")}, {W("a^3"), W("b a b")}};
  for (const auto& gs : cases) {
    const auto H = SubgroupAutomaton::fold(gs);
    std::set<Word> elems{Word()};
    std::vector<Word> layer{Word()};
    for (int k = 0; k < 5; ++k) {
      std::vector<Word> next;
      for (const auto& x : layer)
        for (const auto& g : gs)
          for (int s : {1, -1}) {
            const Word y = x * g.pow(s);
            if (elems.insert(y).second) next.push_back(y);
          }
      layer = std::move(next);
    }
    std::set<Word> left, right;
    for (const auto& c : elems)
      for (std::size_t i = 1; i <= std::min<std::size_t>(c.length(), 2); ++i) {
        left.insert(c.prefix(i));
        right.insert(c.suffix(i));
      }
    for (int x = -3; x <= 3; ++x)
      for (int y = -3; y <= 3; ++y)
        for (const char* first : {"a", "b"}) {
          if (x == 0) continue;
          const char* second = std::string(first) == "a" ? "b" : "a";
          Word p(Gen(first), x);
          if (y != 0) p *= Word(Gen(second), y);
          o.require(H.prefix_acceptable(p, p.length(), Side::Left) == (left.count(p) == 1), "left " + p.str());
          o.require(H.prefix_acceptable(p, p.length(), Side::Right) == (right.count(p) == 1), "right " + p.str());
        }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "perfectness of W", 1.0, perfectness},
      {2, "certificate chain alpha, beta", 1.0, certificate_chain},
      {3, "end-preserving worked example", 1.0, worked_example},
      {4, "bs commutator m=2", 1.0, [] { return bs_witness(2); }},
      {4, "bs commutator m=3", 1.0, [] { return bs_witness(3); }},
      {4, "bs commutator m=4", 1.0, [] { return bs_witness(4); }},
      {4, "bs commutator m=5", 1.0, [] { return bs_witness(5); }},
      {4, "bergman double Z *_2Z Z", 1.0, bergman},
      {5, "small cancellation s=10 m=8", 30.0, small_cancellation},
      {6, "non-left-orderability witnesses", 5.0, witnesses},
      {7, "tamed length bound on 10^4 tuples", 60.0, tamed_bound},
      {8, "magnus suite", 60.0, magnus},
      {9, "bounded-search corroborations", 600.0, bounded_search},
      {10, "oracle equivalences", 60.0, oracle_equivalences},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o.require(false, std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs <= c.limit_s, "time limit exceeded");
    if (!o.ok) ++failed;
    std::printf("%s [%d] %s (%.2fs / %.0fs)%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, c.limit_s,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
