#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>
#include <tuple>
#include <unordered_set>

#include "agt/gentorsion.hpp"

namespace agt {

bool verify_gt_certificate(const Amalgam& G, const GtCertificate& c) {
  if (c.conjugators.empty()) return false;
  if (c.base.is_identity()) return false;
  AmalgamElement acc;
  for (const auto& h : c.conjugators) acc = G.mul(acc, G.conj(c.base, h));
  return acc.is_identity();
}

Word ncl_product(const std::vector<Word>& relators, const NclWitness& w) {
  Word acc;
  for (const auto& t : w.terms) {
    if (t.relator >= relators.size()) throw std::out_of_range("relator index " + std::to_string(t.relator));
    if (t.sign != 1 && t.sign != -1) throw std::invalid_argument("relator sign must be +1 or -1");
    const Word r = t.sign > 0 ? relators[t.relator] : relators[t.relator].inverse();
    acc *= r.conj(t.conjugator);
  }
  return acc;
}

bool verify_ncl_witness(const std::vector<Word>& relators, const NclWitness& w) {
  return ncl_product(relators, w) == w.target;
}

namespace {

// Ball elements plus the letter length of their shortest spelling.
std::pair<std::vector<AmalgamElement>, std::vector<std::size_t>> ball_layers(const Amalgam& G,
                                                                             std::size_t radius) {
  std::vector<AmalgamElement> letters;
  for (std::size_t i = 0; i < G.factor_count(); ++i)
    for (const auto& g : G.factor(i).alphabet)
      for (int s : {1, -1}) letters.push_back(G.embed(i, Word(g, s)));
  std::vector<AmalgamElement> out{AmalgamElement{}};
  std::vector<std::size_t> lens{0};
  std::unordered_set<std::string> seen{G.str(AmalgamElement{})};
  std::size_t layer_begin = 0;
  for (std::size_t r = 1; r <= radius; ++r) {
    const std::size_t layer_end = out.size();
    std::vector<std::pair<std::string, AmalgamElement>> next;
    for (std::size_t k = layer_begin; k < layer_end; ++k)
      for (const auto& l : letters) {
        auto x = G.mul(out[k], l);
        auto key = G.str(x);
        if (seen.insert(key).second) next.emplace_back(std::move(key), std::move(x));
      }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& p : next) {
      out.push_back(std::move(p.second));
      lens.push_back(r);
    }
    layer_begin = layer_end;
  }
  return {std::move(out), std::move(lens)};
}

}  // namespace

std::vector<AmalgamElement> ball(const Amalgam& G, std::size_t radius) { return ball_layers(G, radius).first; }

std::vector<Word> free_ball(const std::vector<Gen>& alphabet, std::size_t radius) {
  std::vector<Word> out{Word{}};
  std::size_t layer_begin = 0;
  for (std::size_t r = 1; r <= radius; ++r) {
    const std::size_t layer_end = out.size();
    std::vector<Word> next;
    for (std::size_t k = layer_begin; k < layer_end; ++k)
      for (const auto& g : alphabet)
        for (int s : {1, -1}) {
          const Word& w = out[k];
          if (!w.empty() && w.syllables().back().gen == g && (w.syllables().back().exp > 0) != (s > 0)) continue;
          next.push_back(w * Word(g, s));
        }
    std::sort(next.begin(), next.end(), [](const Word& a, const Word& b) { return a.str() < b.str(); });
    for (auto& w : next) out.push_back(std::move(w));
    layer_begin = layer_end;
  }
  return out;
}

std::vector<Word> subgroup_ball(const std::vector<Word>& gens, std::size_t count) {
  std::vector<Word> letters;
  for (const auto& g : gens) {
    letters.push_back(g);
    letters.push_back(g.inverse());
  }
  std::vector<Word> out{Word{}};
  std::unordered_set<Word> seen{Word{}};
  std::size_t layer_begin = 0;
  for (std::size_t r = 1; r <= count; ++r) {
    const std::size_t layer_end = out.size();
    std::vector<Word> next;
    for (std::size_t k = layer_begin; k < layer_end; ++k)
      for (const auto& l : letters) {
        Word w = out[k] * l;
        if (seen.insert(w).second) next.push_back(std::move(w));
      }
    std::sort(next.begin(), next.end());
    for (auto& w : next) out.push_back(std::move(w));
    layer_begin = layer_end;
  }
  return out;
}

BallResult nss_ball(const Amalgam& G, const std::vector<AmalgamElement>& R, const SearchBounds& b) {
  if (R.empty()) throw std::invalid_argument("seed set must be nonempty");
  for (const auto& r : R)
    if (r.is_identity()) throw std::invalid_argument("seed set contains the identity");
  BallResult res;
  const auto hs = ball(G, b.radius);
  std::vector<AmalgamElement> conj;
  std::unordered_set<std::string> seen_conj;
  for (const auto& r : R)
    for (const auto& h : hs) {
      auto x = G.conj(r, h);
      if (seen_conj.insert(G.str(x)).second) conj.push_back(std::move(x));
    }
  std::unordered_set<std::string> seen;
  std::vector<AmalgamElement> layer;
  for (const auto& x : conj)
    if (seen.insert(G.str(x)).second) {
      layer.push_back(x);
      res.elements.push_back(x);
    }
  for (std::size_t k = 2; k <= b.max_n; ++k) {
    std::vector<AmalgamElement> next;
    for (const auto& p : layer)
      for (const auto& x : conj) {
        if (res.nodes >= b.node_cap) {
          res.capped = true;
          return res;
        }
        ++res.nodes;
        auto y = G.mul(p, x);
        if (seen.insert(G.str(y)).second) {
          next.push_back(y);
          res.elements.push_back(std::move(y));
        }
      }
    layer = std::move(next);
  }
  return res;
}

namespace {

// One (n, L) slice of the conjugator-tuple space, restricted to tuples whose
// first entry is `first`.
struct SubtreeResult {
  std::optional<std::vector<std::size_t>> found;
  std::size_t nodes = 0;
  bool capped = false;
};

class GtSearch {
 public:
  GtSearch(const Amalgam& G, const AmalgamElement& g, const SearchBounds& b) : G_(G), b_(b) {
    std::tie(hs_, lens_) = ball_layers(G, b.radius);
    for (const auto& h : hs_) conj_.push_back(G.conj(g, h));
  }

  const std::vector<AmalgamElement>& conjugators() const { return hs_; }
  std::size_t ball_size() const { return hs_.size(); }
  std::size_t len(std::size_t i) const { return lens_[i]; }

  SubtreeResult run(std::size_t n, std::size_t L, std::size_t first, std::size_t budget) const {
    SubtreeResult res;
    std::vector<std::size_t> idx{first};
    if (lens_[first] > L) return res;
    dfs(n, L - lens_[first], conj_[first], idx, budget, res);
    return res;
  }

 private:
  bool dfs(std::size_t n, std::size_t remaining, const AmalgamElement& acc, std::vector<std::size_t>& idx,
           std::size_t budget, SubtreeResult& res) const {
    const std::size_t left = n - idx.size();
    if (left == 0) {
      if (remaining == 0 && acc.is_identity()) {
        res.found = idx;
        return true;
      }
      return false;
    }
    if (remaining > left * b_.radius) return false;
    for (std::size_t i = 0; i < hs_.size(); ++i) {
      const std::size_t li = lens_[i];
      if (li > remaining) break;  // lens_ is nondecreasing
      if (remaining - li > (left - 1) * b_.radius) continue;
      if (res.nodes >= budget) {
        res.capped = true;
        return true;
      }
      ++res.nodes;
      auto next = G_.mul(acc, conj_[i]);
      idx.push_back(i);
      if (dfs(n, remaining - li, next, idx, budget, res)) return true;
      idx.pop_back();
    }
    return false;
  }

  const Amalgam& G_;
  SearchBounds b_;
  std::vector<AmalgamElement> hs_;
  std::vector<std::size_t> lens_;
  std::vector<AmalgamElement> conj_;
};

}  // namespace

SearchOutcome search_gt(const Amalgam& G, const AmalgamElement& g, const SearchBounds& b) {
  if (g.is_identity()) throw std::invalid_argument("search_gt needs a nontrivial element");
  SearchOutcome out;
  GtSearch S(G, g, b);
  const std::size_t m = S.ball_size();
  const unsigned jobs = std::max(1u, b.jobs);
  for (std::size_t n = 1; n <= b.max_n; ++n) {
    for (std::size_t L = 0; L <= n * b.radius; ++L) {
      const std::size_t budget = b.node_cap - out.nodes;
      std::vector<SubtreeResult> results(m);
      if (jobs == 1) {
        // Sequential: stop at the first hit, exactly as the merge below would.
        for (std::size_t f = 0; f < m; ++f) {
          results[f] = S.run(n, L, f, b.node_cap - out.nodes);
          ++out.nodes;  // the root node of this subtree
          out.nodes += results[f].nodes;
          if (results[f].capped || out.nodes > b.node_cap) {
            out.status = SearchOutcome::Status::Capped;
            out.nodes = std::min(out.nodes, b.node_cap);
            return out;
          }
          if (results[f].found) {
            GtCertificate c{g, {}};
            for (auto i : *results[f].found) c.conjugators.push_back(S.conjugators()[i]);
            if (!verify_gt_certificate(G, c)) throw std::logic_error("search produced an invalid certificate");
            out.status = SearchOutcome::Status::Found;
            out.cert = std::move(c);
            return out;
          }
        }
        continue;
      }
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t)
        pool.emplace_back([&] {
          for (std::size_t f = next++; f < m; f = next++) results[f] = S.run(n, L, f, budget);
        });
      for (auto& th : pool) th.join();
      for (std::size_t f = 0; f < m; ++f) {
        ++out.nodes;
        out.nodes += results[f].nodes;
        if (out.nodes > b.node_cap || (results[f].capped && !results[f].found)) {
          out.status = SearchOutcome::Status::Capped;
          out.nodes = std::min(out.nodes, b.node_cap);
          return out;
        }
        if (results[f].found) {
          GtCertificate c{g, {}};
          for (auto i : *results[f].found) c.conjugators.push_back(S.conjugators()[i]);
          if (!verify_gt_certificate(G, c)) throw std::logic_error("search produced an invalid certificate");
          out.status = SearchOutcome::Status::Found;
          out.cert = std::move(c);
          return out;
        }
      }
    }
  }
  out.status = SearchOutcome::Status::NoneFound;
  return out;
}

Amalgam double_of(const Amalgam& G, std::size_t factor) {
  const auto& A = G.factor(factor);
  FactorSpec A2;
  A2.name = A.name + "'";
  A2.kind = A.kind;
  HomSpec prime;
  for (const auto& g : A.alphabet) {
    Gen p = g.indexed() ? Gen(g.name() + "'", g.index()) : Gen(g.name() + "'");
    A2.alphabet.push_back(p);
    prime.set(g, Word(p));
  }
  for (const auto& [z, img] : A.edge_images.map()) A2.edge_images.set(z, apply_hom(prime, img));
  return Amalgam(G.edge_alphabet(), {A, A2});
}

GtCertificate bergman_witness(const Amalgam& D, const BergmanViolation& v) {
  const std::size_t n = v.c.size();
  if (n < 2) throw std::invalid_argument("the violation needs at least two edge elements");
  if (D.factor_count() != 2) throw std::invalid_argument("expected a double A *_C A'");
  if (D.in_edge(0, v.a)) throw std::invalid_argument("a lies in the edge subgroup");
  auto a = D.embed(0, v.a);
  AmalgamElement T;
  std::vector<AmalgamElement> ac;
  for (const auto& c : v.c) {
    ac.push_back(D.mul(a, D.edge_element(c)));
    T = D.mul(T, ac.back());
  }
  if (!D.in_edge(T)) throw std::invalid_argument("a c_1 ... a c_n is not in the edge subgroup");
  HomSpec prime;
  for (std::size_t k = 0; k < D.factor(0).alphabet.size(); ++k)
    prime.set(D.factor(0).alphabet[k], Word(D.factor(1).alphabet[k]));
  auto a2 = D.embed(1, apply_hom(prime, v.a));
  GtCertificate cert;
  cert.base = D.mul(a2, D.inv(a));
  // P_n = x^{u_1} ... x^{u_n} with u_j = a c_j a c_{j+1} ... a c_n.
  for (std::size_t j = 0; j < n; ++j) {
    AmalgamElement u;
    for (std::size_t k = j; k < n; ++k) u = D.mul(u, ac[k]);
    cert.conjugators.push_back(u);
  }
  if (!verify_gt_certificate(D, cert)) throw std::logic_error("Bergman certificate failed to verify");
  return cert;
}

Amalgam bs_model(int m) {
  if (m < 2) throw std::invalid_argument("BS(m,m) model needs m >= 2");
  Gen a("a"), b("b"), c("c"), z("z");
  FactorSpec A{"A", FactorKind::Free, {a}, {}};
  A.edge_images.set(z, Word(a, m));
  FactorSpec B{"B", FactorKind::FreeAbelian, {b, c}, {}};
  B.edge_images.set(z, Word(c));
  return Amalgam({z}, {A, B});
}

BsWitness bs_commutator_witness(int m) {
  Amalgam G = bs_model(m);
  auto a = G.embed(0, Word(Gen("a")));
  auto b = G.embed(1, Word(Gen("b")));
  GtCertificate cert;
  cert.base = G.product({a, b, G.inv(a), G.inv(b)});
  // [a^m, b] = prod_j [a,b]^{a^{-(m-j)}}, j = 1..m.
  for (int j = 1; j <= m; ++j) cert.conjugators.push_back(G.pow(a, -(m - j)));
  if (!verify_gt_certificate(G, cert)) throw std::logic_error("BS commutator certificate failed to verify");
  return {std::move(G), std::move(cert)};
}

}  // namespace agt
