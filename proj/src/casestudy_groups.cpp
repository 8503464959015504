#include <stdexcept>

#include "agt/casestudy.hpp"

namespace agt {

namespace {

Word letter(const Gen& g, std::int64_t e = 1) { return Word(g, e); }

Word w_of(const Word& x, const Word& y) { return x * y.inverse() * x.inverse() * y; }

}  // namespace

Presentation knot_presentation(std::int64_t k) {
  const Gen x("x", k), y("y", k);
  const Word X = letter(x), Y = letter(y);
  const Word w = w_of(X, Y);
  return Presentation{{x, y}, {w * X * w.inverse() * Y.inverse()}};
}

Word knot_meridian(std::int64_t k) { return letter(Gen("x", k)); }

Word knot_longitude(std::int64_t k) {
  const Word X = letter(Gen("x", k)), Y = letter(Gen("y", k));
  const Word Xi = X.inverse(), Yi = Y.inverse();
  return Y * Xi * Yi * X.pow(2) * Yi * Xi * Y;
}

Presentation build_w_presentation() {
  Presentation p1 = knot_presentation(1), p2 = knot_presentation(2);
  Presentation out;
  out.generators = {p1.generators[0], p1.generators[1], p2.generators[0], p2.generators[1]};
  out.relators = {p1.relators[0], p2.relators[0]};
  const Word mu1 = knot_meridian(1), mu2 = knot_meridian(2);
  out.relators.push_back(mu1 * mu2.inverse());
  out.relators.push_back(knot_longitude(1) * (mu2 * knot_longitude(2)).inverse());
  return out;
}

namespace {

// x^{y^2} (x^y)^-1 x.
Word twisted(const Word& x, const Word& y) { return x.conj(y.pow(2)) * x.conj(y).inverse() * x; }

}  // namespace

OneRelatorGroup build_onerelator_amalgam() {
  const Gen a("a"), b("b"), c("c"), d("d"), z0("z", 0), z1("z", 1);
  const Word A = letter(a), B = letter(b), Cw = letter(c), D = letter(d);
  std::vector<Word> cg = {A, twisted(A, B)};
  std::vector<Word> dg = {Cw.inverse(), twisted(Cw, D)};
  auto C = std::make_shared<SubgroupAutomaton>(SubgroupAutomaton::fold(cg, {z0, z1}));
  auto Dz = std::make_shared<SubgroupAutomaton>(SubgroupAutomaton::fold(dg, {z0, z1}));
  if (C->rank() != 2 || Dz->rank() != 2) throw std::logic_error("edge subgroups are not of rank 2");
  FactorSpec fa{"A", FactorKind::Free, {a, b}, {}};
  FactorSpec fb{"B", FactorKind::Free, {c, d}, {}};
  fa.edge_images.set(z0, cg[0]);
  fa.edge_images.set(z1, cg[1]);
  fb.edge_images.set(z0, dg[0]);
  fb.edge_images.set(z1, dg[1]);
  return OneRelatorGroup{Amalgam({z0, z1}, {fa, fb}), cg, dg, C, Dz};
}

Presentation onerelator_presentation() {
  const Gen a("a"), b("b"), d("d");
  const Word A = letter(a), B = letter(b), D = letter(d);
  const Word lhs = twisted(A, B);
  const Word rhs = A.conj(D.pow(2)).inverse() * A.conj(D) * A.inverse();
  return Presentation{{a, b, d}, {lhs * rhs.inverse()}};
}

Word expand_indexed(const Word& w, const Gen& a, const Gen& b) {
  Word out;
  for (const auto& s : w.syllables()) {
    if (!s.gen.indexed() || s.gen.name() != a.name()) {
      out *= Word(s.gen, s.exp);
      continue;
    }
    const Word t = letter(b, s.gen.index());
    out *= t.inverse() * letter(a, s.exp) * t;
  }
  return out;
}

Word collapse_indexed(const Word& w, const Gen& a, const Gen& b) {
  std::int64_t h = 0;
  Word out;
  for (const auto& s : w.syllables()) {
    if (s.gen == b) {
      h += s.exp;
    } else if (s.gen == a) {
      out *= Word(Gen(a.name(), -h), s.exp);
    } else {
      out *= Word(s.gen, s.exp);
    }
  }
  if (h != 0) throw std::invalid_argument("word has nonzero weight in " + b.str());
  return out;
}

Word onerelator_v0() { return letter(Gen("a", 0)); }
Word onerelator_v1() { return letter(Gen("a", 2)) * letter(Gen("a", 1)).inverse(); }

Word shift_indices(const Word& w, std::int64_t k) {
  Word out;
  for (const auto& s : w.syllables())
    out *= Word(s.gen.indexed() ? Gen(s.gen.name(), s.gen.index() + k) : s.gen, s.exp);
  return out;
}

Word gamma_relator(std::int64_t shift) {
  const Word a0 = letter(Gen("a", 0)), a1 = letter(Gen("a", 1)), a2 = letter(Gen("a", 2));
  const Word p = a0 * a2;
  return shift_indices(a1 * p * a1.inverse() * p.pow(-2), shift);
}

NclWitness gamma_alpha_witness() {
  const Word a0 = letter(Gen("a", 0)), a1 = letter(Gen("a", 1)), a2 = letter(Gen("a", 2));
  const Word p = a0 * a2;
  NclWitness w;
  w.target = p * a1 * p.inverse() * a1.inverse() * p;
  w.terms = {NclTerm{0, -1, p}};
  return w;
}

std::vector<Word> gamma_beta_relators() { return {gamma_relator(0), gamma_relator(1)}; }

NclWitness gamma_beta_witness() {
  auto A = [](std::int64_t i) { return letter(Gen("a", i)); };
  NclWitness w;
  // a2^{(a1 a3)^-1} a1^{(a0 a2)^-1} a0^{a1} a3, spelled out.
  w.target = A(1) * A(3) * A(2) * A(3).inverse() * A(1).inverse() * A(0) * A(2) * A(1) * A(2).inverse() *
             A(0).inverse() * A(1).inverse() * A(0) * A(1) * A(3);
  w.terms = {NclTerm{1, -1, A(1) * A(3)}, NclTerm{0, -1, A(0) * A(1) * A(3)}};
  return w;
}

}  // namespace agt
