#include "agt/stallings.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include <json.hpp>

namespace agt {

namespace {

struct FEdge {
  std::int32_t u, v;
  std::int32_t gen;
  Word omega;  // evaluates to P(u) x P(v)^-1
  bool alive = true;
};

struct Incidence {
  std::int32_t edge = -1;
  int dir = 0;  // +1: traversed u -> v
};

class Folder {
 public:
  Folder(std::size_t k) : k_(k) {}

  std::int32_t add_vertex() {
    inc_.emplace_back();
    alive_.push_back(true);
    return static_cast<std::int32_t>(inc_.size() - 1);
  }

  void add_edge(std::int32_t u, std::int32_t v, std::int32_t gen, Word omega) {
    auto id = static_cast<std::int32_t>(edges_.size());
    edges_.push_back({u, v, gen, std::move(omega)});
    inc_[u].push_back(id);
    if (v != u) inc_[v].push_back(id);
  }

  void run() {
    std::deque<std::int32_t> work;
    for (std::size_t v = 0; v < inc_.size(); ++v) work.push_back(static_cast<std::int32_t>(v));
    std::vector<Incidence> seen(2 * k_);
    while (!work.empty()) {
      auto v = work.front();
      work.pop_front();
      if (!alive_[v]) continue;
      std::fill(seen.begin(), seen.end(), Incidence{});
      bool folded = false;
      auto list = inc_[v];
      for (auto e : list) {
        if (!edges_[e].alive) continue;
        for (int dir : {1, -1}) {
          if ((dir == 1 && edges_[e].u != v) || (dir == -1 && edges_[e].v != v)) continue;
          auto lbl = 2 * edges_[e].gen + (dir < 0 ? 1 : 0);
          auto& slot = seen[lbl];
          if (slot.edge == e) continue;
          if (slot.edge >= 0) {
            fold(v, slot, {e, dir}, work);
            folded = true;
            break;
          }
          slot = {e, dir};
        }
        if (folded) break;
      }
      if (folded) {
        work.push_front(v);
      } else {
        // Compact the incidence list.
        std::vector<std::int32_t> clean;
        for (auto e : inc_[v])
          if (edges_[e].alive && (edges_[e].u == v || edges_[e].v == v) &&
              std::find(clean.begin(), clean.end(), e) == clean.end())
            clean.push_back(e);
        inc_[v] = std::move(clean);
      }
    }
  }

  const std::vector<FEdge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return inc_.size(); }
  bool alive(std::int32_t v) const { return alive_[v]; }

 private:
  std::int32_t target(const Incidence& i) const {
    return i.dir > 0 ? edges_[i.edge].v : edges_[i.edge].u;
  }
  Word trav(const Incidence& i) const {
    return i.dir > 0 ? edges_[i.edge].omega : edges_[i.edge].omega.inverse();
  }

  void fold(std::int32_t x, Incidence a, Incidence b, std::deque<std::int32_t>& work) {
    auto t1 = target(a), t2 = target(b);
    if (t1 == t2) {
      edges_[b.edge].alive = false;
      work.push_back(t1);
      return;
    }
    if (t2 == 0) {
      std::swap(a, b);
      std::swap(t1, t2);
    }
    Word delta = trav(a).inverse() * trav(b);
    Word dinv = delta.inverse();
    for (auto e : inc_[t2]) {
      auto& ed = edges_[e];
      if (!ed.alive) continue;
      bool out = ed.u == t2, in = ed.v == t2;
      if (!out && !in) continue;
      if (out) {
        ed.u = t1;
        ed.omega = delta * ed.omega;
      }
      if (in) {
        ed.v = t1;
        ed.omega = ed.omega * dinv;
      }
      inc_[t1].push_back(e);
    }
    inc_[t2].clear();
    alive_[t2] = false;
    edges_[b.edge].alive = false;
    work.push_back(t1);
    if (x != t2) work.push_back(x);
  }

  std::size_t k_;
  std::vector<FEdge> edges_;
  std::vector<std::vector<std::int32_t>> inc_;
  std::vector<bool> alive_;
};

}  // namespace

SubgroupAutomaton SubgroupAutomaton::fold(const std::vector<Word>& generators,
                                          const std::vector<Gen>& names) {
  SubgroupAutomaton a;
  if (!names.empty() && names.size() != generators.size())
    throw std::invalid_argument("witness alphabet size differs from generator count");
  for (std::size_t j = 0; j < generators.size(); ++j)
    a.names_.push_back(names.empty() ? Gen("g" + std::to_string(j + 1)) : names[j]);
  a.gens_ = generators;
  for (std::size_t j = 0; j < generators.size(); ++j) a.images_.set(a.names_[j], generators[j]);

  std::set<Gen> alpha;
  for (const auto& w : generators)
    for (const auto& s : w.syllables()) alpha.insert(s.gen);
  a.alphabet_.assign(alpha.begin(), alpha.end());
  const std::size_t k = a.alphabet_.size();

  Folder f(k);
  f.add_vertex();  // base
  for (std::size_t j = 0; j < generators.size(); ++j) {
    auto letters = generators[j].letters();
    if (letters.empty()) continue;
    std::int32_t cur = 0;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      bool last = i + 1 == letters.size();
      std::int32_t nxt = last ? 0 : f.add_vertex();
      Word omega = last ? Word(a.names_[j]) : Word();
      auto gi = static_cast<std::int32_t>(a.label_of(letters[i].gen, 1) >> 1);
      if (letters[i].sign > 0)
        f.add_edge(cur, nxt, gi, omega);
      else
        f.add_edge(nxt, cur, gi, omega.inverse());
      cur = nxt;
    }
  }
  f.run();

  // Canonical renumbering: BFS from base, labels in ascending order.
  const std::size_t nl = 2 * k;
  std::vector<std::vector<std::int32_t>> tmp(f.vertex_count(), std::vector<std::int32_t>(nl, kNone));
  std::vector<std::vector<Word>> tom(f.vertex_count(), std::vector<Word>(nl));
  for (const auto& e : f.edges()) {
    if (!e.alive) continue;
    tmp[e.u][2 * e.gen] = e.v;
    tom[e.u][2 * e.gen] = e.omega;
    tmp[e.v][2 * e.gen + 1] = e.u;
    tom[e.v][2 * e.gen + 1] = e.omega.inverse();
  }
  std::vector<std::int32_t> order, id(f.vertex_count(), kNone);
  order.push_back(0);
  id[0] = 0;
  a.tree_.assign(1, Word());
  for (std::size_t q = 0; q < order.size(); ++q) {
    auto v = order[q];
    for (std::size_t l = 0; l < nl; ++l) {
      auto t = tmp[v][l];
      if (t != kNone && id[t] == kNone) {
        id[t] = static_cast<std::int32_t>(order.size());
        order.push_back(t);
        a.tree_.push_back(a.tree_[q] * Word(a.alphabet_[l / 2], (l & 1) ? -1 : 1));
      }
    }
  }
  a.trans_.assign(order.size(), std::vector<std::int32_t>(nl, kNone));
  a.omega_.assign(order.size(), std::vector<Word>(nl));
  for (std::size_t q = 0; q < order.size(); ++q)
    for (std::size_t l = 0; l < nl; ++l)
      if (tmp[order[q]][l] != kNone) {
        a.trans_[q][l] = id[tmp[order[q]][l]];
        a.omega_[q][l] = tom[order[q]][l];
      }
  a.build_runs();
  a.build_good();
  return a;
}

std::int32_t SubgroupAutomaton::label_of(const Gen& g, std::int64_t e) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), g);
  if (it == alphabet_.end() || !(*it == g)) return kNone;
  return static_cast<std::int32_t>(2 * (it - alphabet_.begin()) + (e < 0 ? 1 : 0));
}

void SubgroupAutomaton::build_runs() {
  const std::size_t n = trans_.size(), k = alphabet_.size();
  run_id_.assign(n, std::vector<std::int32_t>(k, kNone));
  run_pos_.assign(n, std::vector<std::int32_t>(k, 0));
  runs_.clear();
  for (std::size_t g = 0; g < k; ++g) {
    const std::size_t fwd = 2 * g, back = 2 * g + 1;
    auto walk = [&](std::int32_t start, bool cycle) {
      Run r;
      r.cycle = cycle;
      auto rid = static_cast<std::int32_t>(runs_.size());
      std::int32_t s = start;
      do {
        run_id_[s][g] = rid;
        run_pos_[s][g] = static_cast<std::int32_t>(r.states.size());
        r.states.push_back(s);
        s = trans_[s][fwd];
      } while (s != kNone && s != start);
      runs_.push_back(std::move(r));
    };
    for (std::size_t s = 0; s < n; ++s)
      if (trans_[s][back] == kNone) walk(static_cast<std::int32_t>(s), false);
    for (std::size_t s = 0; s < n; ++s)
      if (run_id_[s][g] == kNone) walk(static_cast<std::int32_t>(s), true);
  }
}

void SubgroupAutomaton::build_good() {
  const std::size_t n = trans_.size(), nl = 2 * alphabet_.size();
  good_.assign(n, std::vector<char>(nl, 0));
  std::deque<std::pair<std::int32_t, std::int32_t>> q;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t l = 0; l < nl; ++l)
      if (trans_[s][l] == 0) {
        good_[s][l] = 1;
        q.emplace_back(static_cast<std::int32_t>(s), static_cast<std::int32_t>(l));
      }
  while (!q.empty()) {
    auto [t, lp] = q.front();
    q.pop_front();
    for (std::size_t L = 0; L < nl; ++L) {
      auto sp = trans_[t][L];
      if (sp == kNone || static_cast<std::int32_t>(L) == lp) continue;
      auto in = static_cast<std::int32_t>(L ^ 1);
      if (!good_[sp][in]) {
        good_[sp][in] = 1;
        q.emplace_back(sp, in);
      }
    }
  }
}

std::int32_t SubgroupAutomaton::step(std::int32_t s, std::int32_t gen, std::int64_t e) const {
  const auto& r = runs_[run_id_[s][gen]];
  std::int64_t len = static_cast<std::int64_t>(r.states.size());
  std::int64_t p = run_pos_[s][gen] + e;
  if (r.cycle) {
    p %= len;
    if (p < 0) p += len;
  } else if (p < 0 || p >= len) {
    return kNone;
  }
  return r.states[static_cast<std::size_t>(p)];
}

std::int32_t SubgroupAutomaton::read(const Word& w, std::int32_t from) const {
  std::int32_t s = from;
  for (const auto& sy : w.syllables()) {
    auto l = label_of(sy.gen, sy.exp);
    if (l == kNone) return kNone;
    s = step(s, l >> 1, sy.exp);
    if (s == kNone) return kNone;
  }
  return s;
}

std::size_t SubgroupAutomaton::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : trans_)
    for (std::size_t l = 0; l < row.size(); l += 2) n += row[l] != kNone;
  return n;
}

std::size_t SubgroupAutomaton::base_degree() const {
  std::size_t n = 0;
  for (auto t : trans_[0]) n += t != kNone;
  return n;
}

std::size_t SubgroupAutomaton::syllable_base_degree() const {
  auto branches = [&](std::int32_t s, std::size_t g) {
    for (std::size_t l = 0; l < trans_[s].size(); ++l)
      if ((l >> 1) != g && trans_[s][l] != kNone) return true;
    return false;
  };
  std::size_t n = 0;
  for (std::size_t l = 0; l < trans_[0].size(); ++l) {
    std::int32_t s = trans_[0][l];
    for (std::size_t steps = 0; s != kNone && steps < trans_.size(); ++steps) {
      if (s == 0 || branches(s, l >> 1)) ++n;
      if (s == 0) break;
      s = trans_[s][l];
    }
  }
  return n;
}

bool SubgroupAutomaton::contains(const Word& w) const { return read(w, 0) == 0; }

Word SubgroupAutomaton::express(const Word& w) const {
  Word out;
  std::int32_t s = 0;
  for (const auto& sy : w.syllables()) {
    auto l = label_of(sy.gen, sy.exp);
    if (l == kNone) throw NotMember("generator " + sy.gen.str() + " not in subgroup alphabet");
    std::int64_t n = sy.exp < 0 ? -sy.exp : sy.exp;
    for (std::int64_t i = 0; i < n; ++i) {
      auto t = trans_[s][l];
      if (t == kNone) throw NotMember(w.str() + " is not in the subgroup");
      out *= omega_[s][l];
      s = t;
    }
  }
  if (s != 0) throw NotMember(w.str() + " is not in the subgroup");
  if (!(evaluate(out) == w)) throw std::logic_error("membership witness failed evaluation");
  return out;
}

Word SubgroupAutomaton::evaluate(const Word& witness) const { return apply_hom(images_, witness); }

Word SubgroupAutomaton::coset_rep(const Word& w) const {
  std::int32_t s = 0;
  const auto& sy = w.syllables();
  std::size_t i = 0;
  Word tail;
  for (; i < sy.size(); ++i) {
    auto l = label_of(sy[i].gen, sy[i].exp);
    if (l == kNone) break;
    auto g = l >> 1;
    const auto& r = runs_[run_id_[s][g]];
    std::int64_t n = sy[i].exp < 0 ? -sy[i].exp : sy[i].exp;
    std::int64_t avail = n;
    if (!r.cycle) {
      std::int64_t pos = run_pos_[s][g];
      avail = sy[i].exp > 0 ? static_cast<std::int64_t>(r.states.size()) - 1 - pos : pos;
    }
    if (avail >= n) {
      s = step(s, g, sy[i].exp);
      continue;
    }
    s = step(s, g, sy[i].exp > 0 ? avail : -avail);
    tail.push_back({sy[i].gen, sy[i].exp > 0 ? n - avail : -(n - avail)});
    ++i;
    break;
  }
  for (; i < sy.size(); ++i) tail.push_back(sy[i]);
  return tree_[s] * tail;
}

bool SubgroupAutomaton::prefix_acceptable(const Word& p, std::size_t i, Side side) const {
  if (i == 0 || p.length() != i) throw std::out_of_range("prefix_acceptable: need l(p) = i >= 1");
  if (side == Side::Both) throw std::invalid_argument("prefix_acceptable: side must be left or right");
  const Word q = side == Side::Left ? p : p.inverse();
  auto s = read(q, 0);
  if (s == kNone) return false;
  if (s == 0) return true;
  auto last = label_of(q.syllables().back().gen, 1) >> 1;
  for (std::size_t l = 0; l < good_[s].size(); ++l)
    if (static_cast<std::int32_t>(l >> 1) != last && good_[s][l]) return true;
  return false;
}

std::size_t SubgroupAutomaton::left_compat(const Word& w) const {
  std::int32_t s = 0;
  std::size_t best = 0;
  const auto& sy = w.syllables();
  for (std::size_t i = 0; i < sy.size(); ++i) {
    auto l = label_of(sy[i].gen, sy[i].exp);
    if (l == kNone) break;
    s = step(s, l >> 1, sy[i].exp);
    if (s == kNone) break;
    bool ok = s == 0;
    for (std::size_t L = 0; !ok && L < good_[s].size(); ++L)
      ok = static_cast<std::int32_t>(L >> 1) != (l >> 1) && good_[s][L];
    if (!ok) break;
    best = i + 1;
  }
  return best;
}

std::size_t SubgroupAutomaton::right_compat(const Word& w) const { return left_compat(w.inverse()); }

std::string SubgroupAutomaton::canonical() const {
  std::ostringstream os;
  for (const auto& g : alphabet_) os << g.str() << ',';
  os << '|';
  for (const auto& row : trans_) {
    for (auto t : row) os << t << ',';
    os << ';';
  }
  return os.str();
}

std::string SubgroupAutomaton::to_json() const {
  nlohmann::json j;
  j["states"] = trans_.size();
  j["base"] = 0;
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t s = 0; s < trans_.size(); ++s)
    for (std::size_t l = 0; l < trans_[s].size(); l += 2)
      if (trans_[s][l] != kNone)
        edges.push_back({{"from", s}, {"label", alphabet_[l / 2].str()}, {"to", trans_[s][l]}});
  j["edges"] = edges;
  return j.dump();
}

}  // namespace agt
