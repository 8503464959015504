#include "agt/gentorsion.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace agt {

int SuiteReport::exit_code() const {
  if (!violations.empty()) return 1;
  if (capped || !inconclusive.empty()) return 2;
  return 0;
}

namespace {

nlohmann::json violation_json(const Violation& v) {
  nlohmann::json j;
  j["what"] = v.what;
  j["seed"] = v.seed;
  nlohmann::json in = nlohmann::json::object();
  for (const auto& [k, val] : v.inputs) in[k] = val;
  j["inputs"] = in;
  return j;
}

}  // namespace

std::string SuiteReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["trials"] = trials;
  j["checked"] = checked;
  j["skipped"] = skipped;
  j["nodes"] = nodes;
  j["capped"] = capped;
  j["violations"] = nlohmann::json::array();
  for (const auto& v : violations) j["violations"].push_back(violation_json(v));
  j["inconclusive"] = nlohmann::json::array();
  for (const auto& v : inconclusive) j["inconclusive"].push_back(violation_json(v));
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [k, val] : params) p[k] = val;
  j["params"] = p;
  j["exit_code"] = exit_code();
  return j.dump(2);
}

namespace {

void add_bounds(SuiteReport& r, const SearchBounds& b) {
  r.params.emplace_back("radius", std::to_string(b.radius));
  r.params.emplace_back("max_n", std::to_string(b.max_n));
  r.params.emplace_back("node_cap", std::to_string(b.node_cap));
  r.params.emplace_back("hradius", std::to_string(b.hradius));
  r.params.emplace_back("cprod", std::to_string(b.cprod));
}

// Odometer over tuples in [0, base)^len; false once exhausted.
bool advance(std::vector<std::size_t>& idx, std::size_t base) {
  for (std::size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < base) return true;
    idx[k] = 0;
  }
  return false;
}

}  // namespace

SuiteReport check_rtf(const std::vector<Gen>& alphabet, const SubgroupAutomaton& H, const SearchBounds& b) {
  SuiteReport rep;
  rep.name = "rtf";
  add_bounds(rep, b);
  bool proper = false;
  for (const auto& g : alphabet)
    if (!H.contains(Word(g))) proper = true;
  if (!proper) throw std::invalid_argument("subgroup is not proper");
  std::vector<Word> gs;
  for (auto& g : free_ball(alphabet, b.radius))
    if (!H.contains(g)) gs.push_back(std::move(g));
  const auto hs = subgroup_ball(H.generators(), b.hradius);
  for (const auto& g : gs) {
    for (std::size_t k = 2; k <= b.max_n; ++k) {
      // Solve for h_1: g h_1 (g h_2 ... g h_k) = 1.
      std::vector<std::size_t> idx(k - 1, 0);
      do {
        if (rep.nodes >= b.node_cap) {
          rep.capped = true;
          return rep;
        }
        ++rep.nodes;
        ++rep.checked;
        Word tail;
        for (auto i : idx) tail *= g * hs[i];
        const Word h1 = g.inverse() * tail.inverse();
        if (H.contains(h1)) {
          Violation v{"g h_1 g h_2 ... g h_k = 1 with g outside H", b.seed, {}};
          v.inputs.emplace_back("g", g.str());
          v.inputs.emplace_back("h1", h1.str());
          for (std::size_t j = 0; j < idx.size(); ++j) v.inputs.emplace_back("h" + std::to_string(j + 2), hs[idx[j]].str());
          rep.violations.push_back(std::move(v));
          return rep;
        }
      } while (advance(idx, hs.size()));
    }
  }
  return rep;
}

SuiteReport check_multimalnormal(const std::vector<Gen>& alphabet, const SubgroupAutomaton& C,
                                 const std::vector<Word>& seeds, const SearchBounds& b) {
  SuiteReport rep;
  rep.name = "multimalnormal";
  add_bounds(rep, b);
  if (seeds.empty()) throw std::invalid_argument("C' needs at least one seed");
  for (const auto& s : seeds)
    if (!C.contains(s)) throw std::invalid_argument("seed " + s.str() + " is not in C");
  // C'-ball: products of at most cprod C-conjugates of seeds.
  std::vector<Word> conj;
  {
    std::unordered_set<Word> seen;
    for (const auto& s : seeds)
      for (const auto& h : subgroup_ball(C.generators(), b.hradius)) {
        Word x = s.conj(h);
        if (seen.insert(x).second) conj.push_back(std::move(x));
      }
  }
  std::vector<Word> cball;
  {
    std::unordered_set<Word> seen;
    std::vector<Word> layer;
    for (const auto& x : conj)
      if (seen.insert(x).second) layer.push_back(x), cball.push_back(x);
    for (std::size_t k = 2; k <= b.cprod; ++k) {
      std::vector<Word> next;
      for (const auto& p : layer)
        for (const auto& x : conj) {
          Word y = p * x;
          if (seen.insert(y).second) next.push_back(y), cball.push_back(std::move(y));
        }
      layer = std::move(next);
    }
  }
  for (const auto& x : cball)
    if (x.is_identity()) throw std::invalid_argument("1 lies in the C'-ball");
  std::vector<Word> as;
  for (auto& a : free_ball(alphabet, b.radius))
    if (!C.contains(a)) as.push_back(std::move(a));
  std::vector<Word> terms;
  std::vector<std::pair<std::size_t, std::size_t>> origin;
  {
    std::unordered_set<Word> seen;
    for (std::size_t ci = 0; ci < cball.size(); ++ci)
      for (std::size_t ai = 0; ai < as.size(); ++ai) {
        Word t = cball[ci].conj(as[ai]);
        if (seen.insert(t).second) {
          terms.push_back(std::move(t));
          origin.emplace_back(ci, ai);
        }
      }
  }
  rep.params.emplace_back("cball", std::to_string(cball.size()));
  rep.params.emplace_back("terms", std::to_string(terms.size()));
  // acc * t lies in C iff C t^-1 = C acc, so the last factor is a coset lookup.
  std::unordered_map<Word, std::vector<std::size_t>> by_coset;
  for (std::size_t t = 0; t < terms.size(); ++t) by_coset[C.coset_rep(terms[t].inverse())].push_back(t);
  // Depth-first over products of terms; every prefix is itself a candidate.
  std::vector<std::size_t> stack;
  bool stop = false;
  auto report = [&](const Word& prod) {
    Violation v{"product of C'-conjugates by elements outside C lands in C", b.seed, {}};
    v.inputs.emplace_back("product", prod.str());
    for (std::size_t j = 0; j < stack.size(); ++j) {
      v.inputs.emplace_back("c" + std::to_string(j + 1), cball[origin[stack[j]].first].str());
      v.inputs.emplace_back("a" + std::to_string(j + 1), as[origin[stack[j]].second].str());
    }
    rep.violations.push_back(std::move(v));
    stop = true;
  };
  auto dfs = [&](auto&& self, const Word& acc) -> void {
    if (stack.size() == b.max_n) return;
    if (stack.size() + 1 == b.max_n) {
      rep.checked += terms.size();
      const auto it = by_coset.find(C.coset_rep(acc));
      if (it != by_coset.end()) {
        stack.push_back(it->second.front());
        report(acc * terms[it->second.front()]);
        stack.pop_back();
      }
      return;
    }
    for (std::size_t t = 0; t < terms.size() && !stop; ++t) {
      if (rep.nodes >= b.node_cap) {
        rep.capped = true;
        stop = true;
        return;
      }
      ++rep.nodes;
      ++rep.checked;
      Word next = acc * terms[t];
      stack.push_back(t);
      if (C.contains(next))
        report(next);
      else
        self(self, next);
      stack.pop_back();
    }
  };
  dfs(dfs, Word{});
  return rep;
}

namespace {

struct FactorBall {
  std::vector<Word> elements;
  bool capped = false;
  std::size_t nodes = 0;
};

std::vector<Word> factor_words(const Amalgam& G, std::size_t i, std::size_t radius) {
  std::vector<Word> out;
  std::unordered_set<Word> seen;
  for (const auto& w : free_ball(G.factor(i).alphabet, radius)) {
    Word x = G.f_normal(i, w);
    if (seen.insert(x).second) out.push_back(std::move(x));
  }
  return out;
}

// Bounded NSS of `seeds` inside factor i: conjugators from the factor ball of
// letter radius `radius`, products of at most `max_n` conjugates.
FactorBall factor_nss(const Amalgam& G, std::size_t i, const std::vector<Word>& seeds, std::size_t radius,
                      std::size_t max_n, std::size_t cap) {
  FactorBall res;
  const auto hs = factor_words(G, i, radius);
  std::vector<Word> conj;
  std::unordered_set<Word> seen;
  for (const auto& s : seeds)
    for (const auto& h : hs) {
      Word x = G.f_mul(i, G.f_mul(i, G.f_inv(i, h), s), h);
      if (seen.insert(x).second) conj.push_back(std::move(x));
    }
  res.elements = conj;
  std::vector<Word> layer = conj;
  for (std::size_t k = 2; k <= max_n; ++k) {
    std::vector<Word> next;
    for (const auto& p : layer)
      for (const auto& x : conj) {
        if (res.nodes >= cap) {
          res.capped = true;
          return res;
        }
        ++res.nodes;
        Word y = G.f_mul(i, p, x);
        if (seen.insert(y).second) {
          next.push_back(y);
          res.elements.push_back(std::move(y));
        }
      }
    layer = std::move(next);
  }
  return res;
}

std::set<Word> edge_part(const Amalgam& G, std::size_t i, const std::vector<Word>& xs) {
  std::set<Word> out;
  for (const auto& x : xs)
    if (auto e = G.to_edge(i, x)) out.insert(*e);
  return out;
}

std::string join(const std::set<Word>& s) {
  std::string out;
  for (const auto& w : s) {
    if (!out.empty()) out += ", ";
    out += w.str();
  }
  return "{" + out + "}";
}

}  // namespace

SuiteReport check_family(const Amalgam& G, const FamilySpec& F, const SearchBounds& b) {
  SuiteReport rep;
  rep.name = "family";
  add_bounds(rep, b);
  if (F.members.size() != G.factor_count()) throw std::invalid_argument("one member list per factor is required");
  for (const auto& fam : F.members) {
    if (fam.empty()) throw std::invalid_argument("family must be nonempty for every factor");
    for (const auto& m : fam)
      if (m.seeds.empty()) throw std::invalid_argument("member " + m.label + " has no seeds");
  }
  std::size_t budget = b.node_cap;
  auto nss = [&](std::size_t i, const FamilyMember& m, std::size_t radius, std::size_t n) {
    auto r = factor_nss(G, i, m.seeds, radius, n, budget);
    budget -= std::min(budget, r.nodes);
    rep.nodes += r.nodes;
    if (r.capped) rep.capped = true;
    return r.elements;
  };
  std::vector<std::vector<std::vector<Word>>> balls(G.factor_count());
  for (std::size_t i = 0; i < G.factor_count(); ++i)
    for (const auto& m : F.members[i]) balls[i].push_back(nss(i, m, b.hradius, b.max_n));

  // (1) covering.
  for (std::size_t i = 0; i < G.factor_count(); ++i) {
    std::vector<std::unordered_set<Word>> sets;
    for (const auto& e : balls[i]) sets.emplace_back(e.begin(), e.end());
    for (const auto& x : factor_words(G, i, b.radius)) {
      if (x.is_identity()) continue;
      ++rep.checked;
      bool covered = std::any_of(sets.begin(), sets.end(), [&](const auto& s) { return s.count(x) != 0; });
      if (!covered) {
        Violation v{"nontrivial factor element in no family member", b.seed, {}};
        v.inputs.emplace_back("factor", G.factor(i).name);
        v.inputs.emplace_back("element", x.str());
        rep.violations.push_back(std::move(v));
      }
    }
  }
  if (rep.capped) return rep;

  // (2) matching intersections with the edge group, compared as edge words.
  std::vector<std::vector<std::set<Word>>> cut(G.factor_count()), wide(G.factor_count());
  for (std::size_t i = 0; i < G.factor_count(); ++i)
    for (std::size_t k = 0; k < F.members[i].size(); ++k) {
      cut[i].push_back(edge_part(G, i, balls[i][k]));
      wide[i].push_back(edge_part(G, i, nss(i, F.members[i][k], b.hradius + 1, b.max_n + 1)));
    }
  if (rep.capped) return rep;
  auto subset = [](const std::set<Word>& a, const std::set<Word>& c) {
    return std::includes(c.begin(), c.end(), a.begin(), a.end());
  };
  for (std::size_t i = 0; i < G.factor_count(); ++i)
    for (std::size_t k = 0; k < F.members[i].size(); ++k)
      for (std::size_t j = 0; j < G.factor_count(); ++j) {
        if (j == i) continue;
        ++rep.checked;
        bool matched = false;
        for (std::size_t q = 0; q < F.members[j].size() && !matched; ++q)
          matched = subset(cut[i][k], wide[j][q]) && subset(cut[j][q], wide[i][k]);
        if (!matched) {
          Violation v{"no member of the other factor has a matching edge intersection at these bounds", b.seed, {}};
          v.inputs.emplace_back("member", F.members[i][k].label);
          v.inputs.emplace_back("other_factor", G.factor(j).name);
          v.inputs.emplace_back("intersection", join(cut[i][k]));
          rep.inconclusive.push_back(std::move(v));
        }
      }
  return rep;
}

SuiteReport nss_intersection_check(const Amalgam& G, std::size_t factor, const std::vector<Word>& alphas,
                                   const SearchBounds& b) {
  SuiteReport rep;
  rep.name = "nss_intersection";
  add_bounds(rep, b);
  const auto& edge = G.edge_alphabet();
  const auto hs = free_ball(edge, b.radius + 1);
  std::size_t budget = b.node_cap;
  for (const auto& alpha : alphas) {
    if (alpha.is_identity()) throw std::invalid_argument("alpha must be nontrivial");
    ++rep.trials;
    const Word a = G.from_edge(factor, alpha);
    auto big = factor_nss(G, factor, {a}, b.radius, b.max_n, budget);
    budget -= std::min(budget, big.nodes);
    rep.nodes += big.nodes;
    if (big.capped) {
      rep.capped = true;
      return rep;
    }
    const auto lhs = edge_part(G, factor, big.elements);
    // NSS_C({alpha}) in the free group on the edge generators, enlarged.
    std::unordered_set<Word> rhs;
    std::vector<Word> conj;
    for (const auto& h : hs) {
      Word x = alpha.conj(h);
      if (rhs.insert(x).second) conj.push_back(std::move(x));
    }
    std::vector<Word> layer = conj;
    for (std::size_t k = 2; k <= b.max_n + 1; ++k) {
      std::vector<Word> next;
      for (const auto& p : layer)
        for (const auto& x : conj) {
          if (budget == 0) {
            rep.capped = true;
            return rep;
          }
          --budget;
          ++rep.nodes;
          Word y = p * x;
          if (rhs.insert(y).second) next.push_back(std::move(y));
        }
      layer = std::move(next);
    }
    for (const auto& w : lhs) {
      ++rep.checked;
      if (!rhs.count(w)) {
        Violation v{"element of NSS_A(alpha) in C not reproduced in NSS_C(alpha) at enlarged bounds", b.seed, {}};
        v.inputs.emplace_back("alpha", alpha.str());
        v.inputs.emplace_back("element", w.str());
        rep.inconclusive.push_back(std::move(v));
      }
    }
  }
  return rep;
}

}  // namespace agt
