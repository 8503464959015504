#include "agt/amalgam.hpp"

#include <algorithm>
#include <cctype>

namespace agt {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

Amalgam::Amalgam(std::vector<Gen> edge_alphabet, std::vector<FactorSpec> factors)
    : edge_(std::move(edge_alphabet)) {
  if (factors.empty()) throw std::invalid_argument("amalgam needs at least one factor");
  std::set<Gen> seen;
  for (auto& spec : factors) {
    for (const auto& g : spec.alphabet)
      if (!seen.insert(g).second) throw std::invalid_argument("factor alphabets must be disjoint");
    Factor f;
    f.spec = std::move(spec);
    std::vector<Word> images;
    for (const auto& z : edge_) {
      if (!f.spec.edge_images.has(z))
        throw std::invalid_argument("factor " + f.spec.name + " lacks an image for " + z.str());
      const Word& im = f.spec.edge_images.at(z);
      for (const auto& s : im.syllables())
        if (std::find(f.spec.alphabet.begin(), f.spec.alphabet.end(), s.gen) == f.spec.alphabet.end())
          throw std::invalid_argument("edge image leaves the alphabet of factor " + f.spec.name);
      images.push_back(im);
    }
    if (f.spec.kind == FactorKind::Free) {
      if (!edge_.empty()) {
        f.aut = std::make_shared<SubgroupAutomaton>(SubgroupAutomaton::fold(images, edge_));
        if (f.aut->rank() != edge_.size())
          throw std::invalid_argument("edge images in factor " + f.spec.name + " are not a free basis");
      }
    } else {
      if (edge_.size() > 1)
        throw std::invalid_argument("a free-abelian factor admits at most one edge generator");
      factors_.push_back(std::move(f));
      if (!edge_.empty()) {
        auto& back = factors_.back();
        back.edge_vec = f_vec(factors_.size() - 1, images[0]);
        if (std::all_of(back.edge_vec.begin(), back.edge_vec.end(), [](auto v) { return v == 0; }))
          throw std::invalid_argument("edge image in factor " + back.spec.name + " is trivial");
      }
      continue;
    }
    factors_.push_back(std::move(f));
  }
}

std::optional<std::size_t> Amalgam::factor_index(const std::string& name) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].spec.name == name) return i;
  return std::nullopt;
}

std::optional<std::size_t> Amalgam::factor_of(const Word& w) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& al = factors_[i].spec.alphabet;
    bool ok = true;
    for (const auto& s : w.syllables()) ok = ok && std::find(al.begin(), al.end(), s.gen) != al.end();
    if (ok) return i;
  }
  return std::nullopt;
}

const SubgroupAutomaton* Amalgam::edge_automaton(std::size_t i) const { return factors_[i].aut.get(); }

std::vector<std::int64_t> Amalgam::f_vec(std::size_t i, const Word& x) const {
  const auto& al = factors_[i].spec.alphabet;
  std::vector<std::int64_t> v(al.size(), 0);
  for (const auto& s : x.syllables()) {
    auto it = std::find(al.begin(), al.end(), s.gen);
    if (it == al.end()) throw std::invalid_argument("generator " + s.gen.str() + " outside factor");
    v[static_cast<std::size_t>(it - al.begin())] += s.exp;
  }
  return v;
}

Word Amalgam::f_word(std::size_t i, const std::vector<std::int64_t>& v) const {
  const auto& al = factors_[i].spec.alphabet;
  std::vector<std::size_t> order(al.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return al[a] < al[b]; });
  Word w;
  for (auto j : order) w.push_back({al[j], v[j]});
  return w;
}

Word Amalgam::f_normal(std::size_t i, const Word& w) const {
  if (factors_[i].spec.kind == FactorKind::Free) return w;
  return f_word(i, f_vec(i, w));
}

Word Amalgam::f_mul(std::size_t i, const Word& x, const Word& y) const { return f_normal(i, x * y); }

Word Amalgam::f_inv(std::size_t i, const Word& x) const { return f_normal(i, x.inverse()); }

std::optional<Word> Amalgam::to_edge(std::size_t i, const Word& x) const {
  const auto& f = factors_[i];
  if (edge_.empty()) {
    if (f_normal(i, x).is_identity()) return Word();
    return std::nullopt;
  }
  if (f.spec.kind == FactorKind::Free) {
    if (!f.aut->contains(x)) return std::nullopt;
    return f.aut->express(x);
  }
  auto v = f_vec(i, x);
  const auto& e = f.edge_vec;
  std::optional<std::int64_t> t;
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j] == 0) {
      if (v[j] != 0) return std::nullopt;
      continue;
    }
    if (v[j] % e[j] != 0) return std::nullopt;
    std::int64_t q = v[j] / e[j];
    if (t && *t != q) return std::nullopt;
    t = q;
  }
  return Word(edge_[0], t.value_or(0));
}

Word Amalgam::from_edge(std::size_t i, const Word& c) const {
  if (c.is_identity()) return Word();
  return f_normal(i, apply_hom(factors_[i].spec.edge_images, c));
}

void Amalgam::push(AmalgamElement& acc, const Component& c) const {
  Word w = f_normal(c.factor, c.w);
  if (w.is_identity()) return;
  auto absorb = [&](const Word& edge) {
    if (acc.comps.empty()) {
      acc.head = acc.head * edge;
    } else {
      auto& back = acc.comps.back();
      back.w = f_mul(back.factor, back.w, from_edge(back.factor, edge));
    }
  };
  if (!acc.comps.empty() && acc.comps.back().factor == c.factor) {
    Word x = f_mul(c.factor, acc.comps.back().w, w);
    if (auto e = to_edge(c.factor, x)) {
      acc.comps.pop_back();
      absorb(*e);
    } else {
      acc.comps.back().w = std::move(x);
    }
    return;
  }
  if (auto e = to_edge(c.factor, w)) {
    absorb(*e);
    return;
  }
  acc.comps.push_back({c.factor, std::move(w)});
}

Word Amalgam::coset_rep(std::size_t i, const Word& x) const {
  const auto& f = factors_[i];
  if (edge_.empty()) return f_normal(i, x);
  if (f.spec.kind == FactorKind::Free) return f.aut->coset_rep(x);
  auto v = f_vec(i, x);
  const auto& e = f.edge_vec;
  std::size_t j = 0;
  while (e[j] == 0) ++j;
  std::int64_t m = e[j] < 0 ? -e[j] : e[j];
  std::int64_t r = ((v[j] % m) + m) % m;
  std::int64_t t = (v[j] - r) / e[j];
  for (std::size_t q = 0; q < v.size(); ++q) v[q] -= t * e[q];
  return f_word(i, v);
}

AmalgamElement Amalgam::canonical(AmalgamElement x) const {
  Word c;
  for (auto it = x.comps.rbegin(); it != x.comps.rend(); ++it) {
    Word w = f_mul(it->factor, it->w, from_edge(it->factor, c));
    Word r = coset_rep(it->factor, w);
    auto e = to_edge(it->factor, f_mul(it->factor, w, f_inv(it->factor, r)));
    if (!e) throw std::logic_error("coset representative left the coset");
    c = *e;
    it->w = std::move(r);
  }
  x.head = x.head * c;
  return x;
}

AmalgamElement Amalgam::normalize(const std::vector<Component>& raw) const {
  AmalgamElement acc;
  for (const auto& c : raw) {
    if (c.factor >= factors_.size()) throw std::out_of_range("factor index");
    push(acc, c);
  }
  return canonical(std::move(acc));
}

AmalgamElement Amalgam::embed(std::size_t i, const Word& w) const { return normalize({{i, w}}); }

AmalgamElement Amalgam::edge_element(const Word& c) const {
  AmalgamElement x;
  x.head = c;
  return x;
}

std::vector<Component> Amalgam::raw(const AmalgamElement& x) const {
  std::vector<Component> out = x.comps;
  if (x.head.is_identity()) return out;
  if (out.empty()) return {{0, from_edge(0, x.head)}};
  out[0].w = f_mul(out[0].factor, from_edge(out[0].factor, x.head), out[0].w);
  return out;
}

AmalgamElement Amalgam::mul(const AmalgamElement& x, const AmalgamElement& y) const {
  AmalgamElement acc = x;
  for (const auto& c : raw(y)) push(acc, c);
  return canonical(std::move(acc));
}

AmalgamElement Amalgam::product(const Tuple& xs) const {
  AmalgamElement acc;
  for (const auto& x : xs) acc = mul(acc, x);
  return acc;
}

AmalgamElement Amalgam::inv(const AmalgamElement& x) const {
  if (x.comps.empty()) return edge_element(x.head.inverse());
  std::vector<Component> r;
  for (auto it = x.comps.rbegin(); it != x.comps.rend(); ++it) r.push_back({it->factor, f_inv(it->factor, it->w)});
  if (!x.head.is_identity()) r.push_back({x.comps.front().factor, from_edge(x.comps.front().factor, x.head.inverse())});
  return normalize(r);
}

AmalgamElement Amalgam::pow(const AmalgamElement& x, std::int64_t n) const {
  AmalgamElement base = n < 0 ? inv(x) : x;
  if (n < 0) n = -n;
  AmalgamElement r;
  while (n > 0) {
    if (n & 1) r = mul(r, base);
    n >>= 1;
    if (n) base = mul(base, base);
  }
  return r;
}

AmalgamElement Amalgam::conj(const AmalgamElement& x, const AmalgamElement& h) const {
  return mul(mul(inv(h), x), h);
}

bool Amalgam::equal(const AmalgamElement& x, const AmalgamElement& y) const {
  return mul(x, inv(y)).is_identity();
}

std::size_t Amalgam::lei(const AmalgamElement& x) const {
  if (x.comps.empty()) throw std::invalid_argument("LEI of an element of length 0");
  return x.comps.front().factor;
}

std::size_t Amalgam::rei(const AmalgamElement& x) const {
  if (x.comps.empty()) throw std::invalid_argument("REI of an element of length 0");
  return x.comps.back().factor;
}

std::vector<std::size_t> Amalgam::index_vector(const AmalgamElement& x) const {
  std::vector<std::size_t> v;
  for (const auto& c : x.comps) v.push_back(c.factor);
  return v;
}

std::size_t Amalgam::cancellation_number(const AmalgamElement& g, const AmalgamElement& h) const {
  const auto& xs = g.comps;
  auto ys = raw(h);
  std::size_t lim = std::min(xs.size(), h.comps.size());
  Word c;
  std::size_t k = 0;
  while (k < lim) {
    const auto& x = xs[xs.size() - 1 - k];
    const auto& y = ys[k];
    if (x.factor != y.factor) break;
    Word z = f_mul(x.factor, f_mul(x.factor, x.w, from_edge(x.factor, c)), y.w);
    auto e = to_edge(x.factor, z);
    if (!e) break;
    c = *e;
    ++k;
  }
  return k;
}

std::size_t Amalgam::cancellation_number_oracle(const AmalgamElement& g, const AmalgamElement& h) const {
  auto ys = raw(h);
  std::size_t lim = std::min(g.comps.size(), h.comps.size());
  std::size_t best = 0;
  for (std::size_t k = 1; k <= lim; ++k) {
    std::vector<Component> seq(g.comps.end() - static_cast<std::ptrdiff_t>(k), g.comps.end());
    seq.insert(seq.end(), ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(k));
    if (normalize(seq).comps.empty()) best = k;
  }
  return best;
}

bool Amalgam::end_preserving(const Tuple& t, Side side) const {
  std::optional<std::size_t> first, last;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i].length() >= 1) {
      if (!first) first = i;
      last = i;
    }
  if (!first) throw std::invalid_argument("end_preserving: every entry has length 0");
  auto p = product(t);
  if (p.length() == 0) return false;
  bool left = lei(p) == lei(t[*first]);
  bool right = rei(p) == rei(t[*last]);
  switch (side) {
    case Side::Left: return left;
    case Side::Right: return right;
    default: return left && right;
  }
}

bool Amalgam::is_reduced(const Tuple& t) const {
  std::size_t sum = 0;
  for (const auto& x : t) sum += x.length();
  return product(t).length() == sum;
}

AmalgamElement Amalgam::left_part(const AmalgamElement& g, std::size_t k) const {
  AmalgamElement f;
  f.head = g.head;
  f.comps.assign(g.comps.begin(), g.comps.begin() + static_cast<std::ptrdiff_t>(k));
  return f;
}

AmalgamElement Amalgam::right_part(const AmalgamElement& g, std::size_t k) const {
  AmalgamElement f;
  f.comps.assign(g.comps.end() - static_cast<std::ptrdiff_t>(k), g.comps.end());
  return f;
}

std::vector<Splitting> Amalgam::factors(const AmalgamElement& g, Side side) const {
  std::vector<Splitting> out;
  const std::size_t l = g.length();
  for (std::size_t k = 0; k <= l; ++k) {
    if (side == Side::Right) {
      out.push_back({right_part(g, k), left_part(g, l - k)});
    } else {
      AmalgamElement rest;
      rest.comps.assign(g.comps.begin() + static_cast<std::ptrdiff_t>(k), g.comps.end());
      out.push_back({left_part(g, k), rest});
    }
  }
  return out;
}

SandwichResult Amalgam::check_sandwich_nontrivial(const SandwichDecomposition& d) const {
  const std::size_t n = d.alpha.size();
  if (n < 1 || d.g.size() != n + 1) throw std::invalid_argument("sandwich needs g_0..g_n and alpha_1..alpha_n, n >= 1");
  SandwichResult res;
  for (std::size_t i = 1; i + 1 <= n; ++i) {
    const auto& gi = d.g[i];
    std::size_t best_l = 0, best_r = 0;
    AmalgamElement rf, lf;
    for (const auto& s : factors(d.g[i - 1], Side::Right)) {
      auto k = cancellation_number(mul(s.factor, d.alpha[i - 1]), gi);
      if (k > best_l) best_l = k, rf = s.factor;
    }
    for (const auto& s : factors(d.g[i + 1], Side::Left)) {
      auto k = cancellation_number(gi, mul(d.alpha[i], s.factor));
      if (k > best_r) best_r = k, lf = s.factor;
    }
    if (best_l + best_r + 2 > gi.length()) {
      res.status = SandwichResult::Status::ConditionViolated;
      res.index = i;
      res.right_factor = rf;
      res.left_factor = lf;
      res.left_k = best_l;
      res.right_k = best_r;
      return res;
    }
  }
  Tuple t;
  for (std::size_t i = 0; i < n; ++i) {
    t.push_back(d.g[i]);
    t.push_back(d.alpha[i]);
  }
  t.push_back(d.g[n]);
  res.product = product(t);
  if (res.product.is_identity()) {
    if (n >= 2) throw std::logic_error("sandwich conditions hold but the product is trivial");
    res.status = SandwichResult::Status::Degenerate;
    return res;
  }
  res.status = SandwichResult::Status::VerifiedNontrivial;
  return res;
}

std::string Amalgam::str(const AmalgamElement& x) const {
  if (x.is_identity()) return "1";
  std::string out;
  for (const auto& c : raw(x)) out += "[" + factors_[c.factor].spec.name + ": " + c.w.str() + "]";
  return out;
}

AmalgamElement Amalgam::parse(const std::string& text) const {
  std::string s = trim(text);
  if (s.empty() || s == "1") return {};
  if (s.front() == '[') {
    std::size_t depth = 0, close = 0;
    for (; close < s.size(); ++close) {
      if (s[close] == '[') ++depth;
      if (s[close] == ']' && --depth == 0) break;
    }
    if (close >= s.size()) throw ParseError("unbalanced bracket in '" + s + "'");
    std::string inner = s.substr(1, close - 1);
    if (inner.find(':') == std::string::npos) {
      // Commutator [x,y]: split at the top-level comma.
      std::size_t d = 0, comma = std::string::npos;
      for (std::size_t j = 0; j < inner.size(); ++j) {
        if (inner[j] == '[') ++d;
        if (inner[j] == ']') --d;
        if (inner[j] == ',' && d == 0) comma = j;
      }
      if (comma == std::string::npos || close + 1 != s.size()) throw ParseError("bad element '" + s + "'");
      auto x = parse(inner.substr(0, comma));
      auto y = parse(inner.substr(comma + 1));
      return mul(mul(x, y), mul(inv(x), inv(y)));
    }
    std::vector<Component> raw;
    std::size_t pos = 0;
    while (pos < s.size()) {
      while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
      if (pos >= s.size()) break;
      if (s[pos] != '[') throw ParseError("expected '[' in '" + s + "'");
      // Indexed generators also use brackets: find the bracket closing this group.
      std::size_t depth = 0, j = pos + 1;
      for (; j < s.size(); ++j) {
        if (s[j] == '[') ++depth;
        if (s[j] == ']') {
          if (depth == 0) break;
          --depth;
        }
      }
      if (j >= s.size()) throw ParseError("unbalanced bracket in '" + s + "'");
      auto colon = s.find(':', pos);
      if (colon == std::string::npos || colon > j) throw ParseError("missing factor tag in '" + s + "'");
      std::string name = trim(s.substr(pos + 1, colon - pos - 1));
      auto fi = factor_index(name);
      if (!fi) throw ParseError("unknown factor '" + name + "'");
      Word w = Word::parse(s.substr(colon + 1, j - colon - 1), &factors_[*fi].spec.alphabet);
      raw.push_back({*fi, w});
      pos = j + 1;
    }
    return normalize(raw);
  }
  Word w = Word::parse(s);
  std::vector<Component> raw;
  for (const auto& sy : w.syllables()) {
    auto fi = factor_of(Word(sy.gen, sy.exp));
    if (!fi) throw ParseError("generator '" + sy.gen.str() + "' belongs to no factor");
    if (!raw.empty() && raw.back().factor == *fi)
      raw.back().w.push_back(sy);
    else
      raw.push_back({*fi, Word(sy.gen, sy.exp)});
  }
  return normalize(raw);
}

}  // namespace agt
