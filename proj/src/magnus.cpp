#include "agt/magnus.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "agt/stallings.hpp"

namespace agt {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("series coefficient overflow");
  return r;
}

}  // namespace

Series::Series(int cap) : cap_(cap) {
  if (cap < 0) throw std::invalid_argument("truncation degree must be nonnegative");
}

Series Series::one(int cap) {
  Series s(cap);
  s.add({}, 1);
  return s;
}

Series Series::var(std::int64_t i, int cap) {
  Series s(cap);
  s.add({i}, 1);
  return s;
}

std::int64_t Series::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void Series::add(const Monomial& m, std::int64_t c) {
  if (c == 0 || static_cast<int>(m.size()) > cap_) return;
  auto [it, fresh] = terms_.try_emplace(m, 0);
  it->second = checked_add(it->second, c);
  if (it->second == 0) terms_.erase(it);
}

Series& Series::operator+=(const Series& o) {
  cap_ = std::min(cap_, o.cap_);
  *this = truncated(cap_);
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Series& Series::operator-=(const Series& o) {
  cap_ = std::min(cap_, o.cap_);
  *this = truncated(cap_);
  for (const auto& [m, c] : o.terms_) add(m, checked_mul(c, -1));
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  const int d = std::min(a.cap_, b.cap_);
  std::vector<std::vector<const std::pair<const Monomial, std::int64_t>*>> by_deg(d + 1);
  for (const auto& t : b.terms_)
    if (static_cast<int>(t.first.size()) <= d) by_deg[t.first.size()].push_back(&t);
  Series out(d);
  Monomial m;
  for (const auto& [ma, ca] : a.terms_) {
    const int da = static_cast<int>(ma.size());
    for (int db = 0; da + db <= d; ++db)
      for (const auto* t : by_deg[db]) {
        m = ma;
        m.insert(m.end(), t->first.begin(), t->first.end());
        out.add(m, checked_mul(ca, t->second));
      }
  }
  return out;
}

Series Series::truncated(int d) const {
  Series out(std::min(d, cap_));
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(m.size()) <= out.cap_) out.terms_.emplace(m, c);
  return out;
}

Series Series::homogeneous(int k) const {
  Series out(cap_);
  for (const auto& [m, c] : terms_)
    if (static_cast<int>(m.size()) == k) out.terms_.emplace(m, c);
  return out;
}

std::optional<int> Series::min_positive_degree() const {
  std::optional<int> best;
  for (const auto& [m, c] : terms_)
    if (!m.empty() && (!best || static_cast<int>(m.size()) < *best)) best = static_cast<int>(m.size());
  return best;
}

std::set<std::int64_t> Series::variables() const {
  std::set<std::int64_t> out;
  for (const auto& [m, c] : terms_) out.insert(m.begin(), m.end());
  return out;
}

std::string Series::str() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, std::int64_t>> ts(terms_.begin(), terms_.end());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& x, const auto& y) {
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    return x.first < y.first;
  });
  std::string out;
  for (const auto& [m, c] : ts) {
    std::int64_t v = c;
    if (out.empty()) {
      if (v < 0) out += "-";
    } else {
      out += v < 0 ? " - " : " + ";
    }
    const std::int64_t a = v < 0 ? -v : v;
    out += std::to_string(a);
    if (!m.empty()) {
      out += " * ";
      for (auto i : m) out += "X_{" + std::to_string(i) + "}";
    }
  }
  return out;
}

VarMap indexed_vars() {
  return [](const Gen& g) -> std::int64_t {
    if (!g.indexed()) throw ParseError("generator '" + g.str() + "' has no index");
    return g.index();
  };
}

VarMap alphabet_vars(const std::vector<Gen>& alphabet) {
  std::map<Gen, std::int64_t> pos;
  for (std::size_t k = 0; k < alphabet.size(); ++k) pos.emplace(alphabet[k], static_cast<std::int64_t>(k));
  return [pos](const Gen& g) -> std::int64_t {
    auto it = pos.find(g);
    if (it == pos.end()) throw ParseError("generator '" + g.str() + "' is not in the alphabet");
    return it->second;
  };
}

Series mu(const Word& w, int d, const VarMap& vars) {
  if (d < 1) throw std::invalid_argument("truncation degree must be at least 1");
  Series acc = Series::one(d);
  for (const auto& syl : w.syllables()) {
    const std::int64_t i = vars(syl.gen);
    const bool neg = syl.exp < 0;
    const std::int64_t reps = neg ? -syl.exp : syl.exp;
    for (std::int64_t r = 0; r < reps; ++r) {
      // Right multiplication by 1 + X_i, or by 1 - X_i + X_i^2 - ... .
      Series next = acc;
      for (const auto& [m, c] : acc.terms()) {
        Monomial mm = m;
        std::int64_t coef = c;
        while (static_cast<int>(mm.size()) < d) {
          mm.push_back(i);
          if (neg) coef = -coef;
          next.add(mm, coef);
          if (!neg) break;
        }
      }
      acc = std::move(next);
    }
  }
  return acc;
}

std::optional<LeadingTerm> leading_term(const Word& w, int max_d, const VarMap& vars) {
  if (max_d < 1) throw std::invalid_argument("degree cap must be at least 1");
  if (w.is_identity()) return std::nullopt;
  const int limit = static_cast<int>(std::min<std::int64_t>(max_d, std::max<std::int64_t>(1, w.letter_len())));
  for (int d = 1;; d = std::min(2 * d, limit)) {
    Series s = mu(w, d, vars);
    s.add({}, -1);
    if (auto k = s.min_positive_degree()) return LeadingTerm{*k, s.homogeneous(*k)};
    if (d == limit) break;
  }
  if (limit < w.letter_len()) return std::nullopt;
  throw std::logic_error("no nonzero term up to the letter length of a nontrivial word");
}

Series apply_sigma(const Series& s, const std::map<std::int64_t, std::int64_t>& sigma) {
  Series out(s.cap());
  for (const auto& [m, c] : s.terms()) {
    Monomial mm;
    mm.reserve(m.size());
    for (auto i : m) {
      auto it = sigma.find(i);
      if (it == sigma.end()) throw std::invalid_argument("sigma is undefined on index " + std::to_string(i));
      mm.push_back(it->second);
    }
    out.add(mm, c);
  }
  return out;
}

RelationSpec RelationSpec::zero_vars(std::set<std::int64_t> z) {
  RelationSpec r;
  r.kind = Kind::ZeroVars;
  r.zero = std::move(z);
  return r;
}

RelationSpec RelationSpec::identify(std::map<std::int64_t, std::int64_t> s) {
  RelationSpec r;
  r.kind = Kind::Identify;
  r.sigma = std::move(s);
  return r;
}

namespace {

// Class representatives of the equivalence generated by i ~ sigma(i).
std::map<std::int64_t, std::int64_t> class_reps(const std::map<std::int64_t, std::int64_t>& sigma,
                                                 const std::set<std::int64_t>& extra) {
  std::map<std::int64_t, std::int64_t> parent;
  auto find = [&](std::int64_t x) {
    parent.try_emplace(x, x);
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto i : extra) find(i);
  for (const auto& [i, j] : sigma) {
    auto a = find(i), b = find(j);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::int64_t, std::int64_t> rep;
  for (const auto& [i, p] : parent) rep[i] = find(i);
  return rep;
}

}  // namespace

Series quotient(const RelationSpec& r, const Series& s) {
  if (r.kind == RelationSpec::Kind::ZeroVars) {
    Series out(s.cap());
    for (const auto& [m, c] : s.terms())
      if (std::none_of(m.begin(), m.end(), [&](auto i) { return r.zero.count(i) != 0; })) out.add(m, c);
    return out;
  }
  return apply_sigma(s, class_reps(r.sigma, s.variables()));
}

bool annihilates(const RelationSpec& r, const Word& w, const VarMap& vars) {
  // Both quotient maps send 1 + X_i to 1 or to 1 + X_j, so the image of mu(w)
  // is mu of the image word, and mu is injective.
  std::set<std::int64_t> used;
  for (const auto& sy : w.syllables()) used.insert(vars(sy.gen));
  const auto rep = r.kind == RelationSpec::Kind::Identify ? class_reps(r.sigma, used)
                                                          : std::map<std::int64_t, std::int64_t>{};
  Word img;
  for (const auto& sy : w.syllables()) {
    const std::int64_t i = vars(sy.gen);
    if (r.kind == RelationSpec::Kind::ZeroVars) {
      if (!r.zero.count(i)) img *= Word(Gen("X", i), sy.exp);
    } else {
      img *= Word(Gen("X", rep.at(i)), sy.exp);
    }
  }
  return img.is_identity();
}

bool annihilates(const RelationSpec& r, const LeadingTerm& l) { return quotient(r, l.part).is_zero(); }

bool check_c_leading_vars(const Word& alpha, const Word& v0, const Word& v1) {
  const Gen b0("v", 0), b1("v", 1);
  auto C = SubgroupAutomaton::fold({v0, v1}, {b0, b1});
  if (!C.contains(alpha)) throw std::invalid_argument("alpha is not in <v0, v1>");
  const Word ex = C.express(alpha);
  if (weight(ex, b0) != 0 || weight(ex, b1) != 0) throw std::invalid_argument("alpha has a nonzero weight");
  auto L = leading_term(alpha);
  if (!L) throw std::invalid_argument("alpha is trivial");
  const auto vs = L->part.variables();
  return vs.count(0) && vs.count(1) && vs.count(2);
}

int magnus_sign(const Word& w, const VarMap& vars) {
  auto L = leading_term(w, 64, vars);
  if (!L) return 0;
  // std::map orders equal-degree monomials lexicographically.
  return L->part.terms().begin()->second > 0 ? 1 : -1;
}

}  // namespace agt
