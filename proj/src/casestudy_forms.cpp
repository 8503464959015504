#include <stdexcept>

#include "agt/casestudy.hpp"

namespace agt {

PrefixResult prefix_of(const NonLoGroup& g, const Word& E) {
  if (E.length() != 1) throw std::invalid_argument("prefix: E must be a single component");
  const auto pm = g.basis_pm();
  const std::size_t m = g.alpha.size();
  std::vector<PrefixResult> hits;
  for (const auto& u : pm)
    for (std::size_t i = 1; i <= u.length(); ++i)
      if (u.block(i) == E) hits.push_back({PrefixResult::Case::Component, u.prefix(i - 1), u, i});
  for (std::size_t iv = 0; iv < pm.size(); ++iv)
    for (std::size_t iu = 0; iu < pm.size(); ++iu) {
      if (iv + m == iu || iu + m == iv) continue;
      const Word& v = pm[iv];
      const Word& u = pm[iu];
      const Syllable& last = v.syl(v.length() - 1);
      const Syllable& first = u.syl(0);
      if (last.gen != first.gen) continue;
      const Word merged = v.rblock(1) * u.block(1);
      if (merged == E) hits.push_back({PrefixResult::Case::Merge, v.prefix(v.length() - 1), u, v.length()});
    }
  if (hits.empty()) throw std::invalid_argument("prefix: " + E.str() + " is not a component of an element of C");
  if (hits.size() > 1) throw std::logic_error("prefix: " + E.str() + " has several sources");
  return hits.front();
}

std::size_t Lambda(const NonLoGroup& g, const Word& x) { return g.C->left_compat(x); }
std::size_t Pcompat(const NonLoGroup& g, const Word& x) { return g.C->right_compat(x); }

bool left_c_simplified(const NonLoGroup& g, const Word& x) {
  const auto s = static_cast<std::size_t>(g.e.s);
  return Lambda(g, x) < s || (x.length() == s && g.C->prefix_acceptable(x, s, Side::Left));
}

bool right_c_simplified(const NonLoGroup& g, const Word& x) {
  const auto s = static_cast<std::size_t>(g.e.s);
  return Pcompat(g, x) < s || (x.length() == s && g.C->prefix_acceptable(x, s, Side::Right));
}

namespace {

// One stripping step: returns false when no generator matches.
bool strip(const NonLoGroup& g, CSimplified& r, Side side) {
  const auto s = static_cast<std::size_t>(g.e.s);
  for (const auto& u : g.basis_pm()) {
    const bool match = side == Side::Left ? u.prefix(s) == r.alpha.prefix(s) : u.suffix(s) == r.alpha.suffix(s);
    if (!match) continue;
    const std::size_t before = r.alpha.length();
    if (side == Side::Left) {
      r.alpha = u.inverse() * r.alpha;
      r.c1 = r.c1 * u;
    } else {
      r.alpha = r.alpha * u.inverse();
      r.c2 = u * r.c2;
    }
    if (r.alpha.length() >= before) throw std::logic_error("C-simplification did not shorten the element");
    ++r.steps;
    return true;
  }
  return false;
}

}  // namespace

CSimplified c_simplify_left(const NonLoGroup& g, const Word& x) {
  if (g.C->contains(x)) throw std::invalid_argument("c_simplify: element lies in C");
  CSimplified r{Word(), x, Word(), 0};
  while (!left_c_simplified(g, r.alpha))
    if (!strip(g, r, Side::Left)) throw std::logic_error("no generator shares the first s components");
  return r;
}

CSimplified c_simplify(const NonLoGroup& g, const Word& x) {
  CSimplified r = c_simplify_left(g, x);
  while (!right_c_simplified(g, r.alpha) || !left_c_simplified(g, r.alpha)) {
    if (!left_c_simplified(g, r.alpha)) {
      if (!strip(g, r, Side::Left)) throw std::logic_error("no generator shares the first s components");
    } else if (!strip(g, r, Side::Right)) {
      throw std::logic_error("no generator shares the last s components");
    }
  }
  return r;
}

namespace {

bool reduced(const Word& x, const Word& y) { return (x * y).length() == x.length() + y.length(); }

}  // namespace

StandardForm standard_form(const NonLoGroup& g, const Word& c, const Word& x) {
  if (c.is_identity() || !g.C->contains(c)) throw std::invalid_argument("standard_form: c must be in C \\ {1}");
  if (g.C->contains(x)) throw std::invalid_argument("standard_form: g must lie outside C");
  if (!left_c_simplified(g, x)) throw std::invalid_argument("standard_form: g is not left C-simplified");
  const auto s = static_cast<std::size_t>(g.e.s);
  StandardForm f;
  f.i = syllable_cancellation(x.inverse(), c);
  f.j = syllable_cancellation(c, x);
  f.k = std::max(f.i, f.j);
  const Word h1 = x.prefix(f.k);
  f.chi = c.conj(h1);
  f.gamma = h1.inverse() * x;
  const Word gi = f.gamma.inverse();
  f.xi1 = reduced(gi, f.chi) ? Word() : f.chi.prefix(1);
  f.xi2 = reduced(f.chi, f.gamma) ? Word() : f.chi.suffix(1);
  f.lambda = gi * f.xi1;
  f.mu = f.xi1.inverse() * f.chi * f.xi2.inverse();
  f.rho = f.xi2 * f.gamma;
  f.conj = c.conj(x);

  auto check = [&](bool ok, const char* what) {
    if (!ok) f.failures.emplace_back(what);
  };
  const std::size_t lg = f.gamma.length();
  check((gi * f.chi).length() + 1 >= lg + f.chi.length() && (f.chi * f.gamma).length() + 1 >= lg + f.chi.length(),
        "gamma^-1 chi gamma is not almost reduced");
  check(f.lambda * f.mu * f.rho == f.conj, "lambda mu rho differs from c^g");
  check(f.conj.length() == f.lambda.length() + f.mu.length() + f.rho.length(), "lambda mu rho is not reduced");
  check(f.lambda.length() == lg && f.rho.length() == lg, "outer lengths differ from l(gamma)");
  if (lg > 0)
    check(f.lambda.prefix(lg - 1) == gi.prefix(lg - 1) && f.rho.suffix(lg - 1) == f.gamma.suffix(lg - 1),
          "outer parts differ from gamma beyond the last component");
  check(f.chi.length() >= 2 * s, "l(chi) < 2s");
  check(f.mu.length() + 1 >= 2 * s, "l(mu) < 2s - 1");
  check(f.i + f.j + s <= c.length(), "i + j > l(c) - s");
  check(f.i + f.j + s <= f.mu.length() + 1, "i + j > l(mu) - s + 1");
  check(f.conj.length() + 1 >= 2 * s + 2 * lg, "l(c^g) < 2s - 1 + 2 l(gamma)");
  const std::size_t lp = lg + 2;
  check(f.conj.length() >= lp && !g.C->prefix_acceptable(f.conj.prefix(lp), lp, Side::Left),
        "c^g is left (l(gamma)+2)-compatible");
  check(f.conj.length() >= lp && !g.C->prefix_acceptable(f.conj.suffix(lp), lp, Side::Right),
        "c^g is right (l(gamma)+2)-compatible");
  return f;
}

std::vector<std::string> check_local_property(const NonLoGroup& g, const Word& x, const StandardForm& f) {
  std::vector<std::string> out;
  const Word& D = f.conj;
  const std::size_t n = D.length();
  const std::size_t from = f.lambda.length() + 1, to = f.lambda.length() + f.mu.length();
  for (std::size_t t = from; t <= to && t <= n; ++t) {
    const Word Dt = D.block(t);
    Word p;
    try {
      p = prefix_of(g, Dt).p;
    } catch (const std::exception& ex) {
      out.push_back("component " + std::to_string(t) + ": " + ex.what());
      continue;
    }
    const Word left = x * D.prefix(t - 1) * p.inverse();
    const Word right = p * D.range(t, n) * x.inverse();
    if (!g.C->contains(left)) out.push_back("component " + std::to_string(t) + ": left containment fails");
    if (!g.C->contains(right)) out.push_back("component " + std::to_string(t) + ": right containment fails");
  }
  return out;
}

}  // namespace agt
