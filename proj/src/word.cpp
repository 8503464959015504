#include "agt/word.hpp"

#include <cctype>
#include <charconv>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "agt/stallings.hpp"

namespace agt {

namespace {

class SymbolTable {
 public:
  std::uint32_t intern(std::string_view name) {
    {
      std::shared_lock lk(mu_);
      auto it = ids_.find(std::string(name));
      if (it != ids_.end()) return it->second;
    }
    std::unique_lock lk(mu_);
    auto [it, inserted] = ids_.try_emplace(std::string(name), static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.push_back(std::make_unique<std::string>(name));
    return it->second;
  }
  const std::string& name(std::uint32_t id) {
    std::shared_lock lk(mu_);
    return *names_[id];
  }

 private:
  std::shared_mutex mu_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::unique_ptr<std::string>> names_;
};

SymbolTable& symbols() {
  static SymbolTable t;
  static const bool seeded = (t.intern(""), true);
  (void)seeded;
  return t;
}

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

std::int64_t parse_int(std::string_view s, std::string_view ctx) {
  std::int64_t v = 0;
  auto first = s.data();
  if (!s.empty() && s[0] == '+') ++first;
  auto [p, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || first == s.data() + s.size())
    throw ParseError("bad integer in token '" + std::string(ctx) + "'");
  return v;
}

Gen parse_gen(std::string_view tok) {
  auto lb = tok.find('[');
  if (lb == std::string_view::npos) {
    if (!valid_name(tok)) throw ParseError("bad generator '" + std::string(tok) + "'");
    return Gen(tok);
  }
  if (tok.back() != ']') throw ParseError("bad indexed generator '" + std::string(tok) + "'");
  auto name = tok.substr(0, lb);
  if (!valid_name(name)) throw ParseError("bad generator '" + std::string(tok) + "'");
  return Gen(name, parse_int(tok.substr(lb + 1, tok.size() - lb - 2), tok));
}

}  // namespace

Gen::Gen(std::string_view name) : sym_(symbols().intern(name)) {}
Gen::Gen(std::string_view name, std::int64_t index)
    : sym_(symbols().intern(name)), indexed_(true), index_(index) {}

const std::string& Gen::name() const { return symbols().name(sym_); }

std::string Gen::str() const {
  if (!indexed_) return name();
  return name() + "[" + std::to_string(index_) + "]";
}

std::strong_ordering Gen::operator<=>(const Gen& o) const {
  if (sym_ != o.sym_) {
    int c = name().compare(o.name());
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (indexed_ != o.indexed_) return indexed_ ? std::strong_ordering::greater : std::strong_ordering::less;
  return index_ <=> o.index_;
}

std::size_t Gen::hash() const {
  std::uint64_t h = (static_cast<std::uint64_t>(sym_) << 1) | (indexed_ ? 1u : 0u);
  h ^= static_cast<std::uint64_t>(index_) * 0x9E3779B97F4A7C15ull;
  h ^= h >> 29;
  return static_cast<std::size_t>(h);
}

Word::Word(Gen g, std::int64_t e) {
  if (e != 0) syl_.push_back({g, e});
}

void Word::push_back(const Syllable& s) {
  if (s.exp == 0) return;
  if (!syl_.empty() && syl_.back().gen == s.gen) {
    syl_.back().exp += s.exp;
    if (syl_.back().exp == 0) syl_.pop_back();
  } else {
    syl_.push_back(s);
  }
}

Word Word::from_syllables(const std::vector<Syllable>& syls) {
  Word w;
  for (const auto& s : syls) w.push_back(s);
  return w;
}

Word Word::parse(std::string_view text, const std::vector<Gen>* alphabet) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    i = j;
    if (tok == "1" || tok == "e") continue;
    std::int64_t e = 1;
    auto caret = tok.find('^');
    std::string_view gtok = tok;
    if (caret != std::string_view::npos) {
      gtok = tok.substr(0, caret);
      e = parse_int(tok.substr(caret + 1), tok);
    }
    Gen g = parse_gen(gtok);
    if (alphabet) {
      bool ok = false;
      for (const auto& a : *alphabet) ok = ok || a == g;
      if (!ok) throw ParseError("unknown generator '" + g.str() + "'");
    }
    w.push_back({g, e});
  }
  return w;
}

std::int64_t Word::letter_len() const {
  std::int64_t n = 0;
  for (const auto& s : syl_) n += s.exp < 0 ? -s.exp : s.exp;
  return n;
}

Word Word::block(std::size_t i) const {
  if (i < 1 || i > syl_.size()) throw std::out_of_range("syllable index");
  return Word(syl_[i - 1].gen, syl_[i - 1].exp);
}

Word Word::rblock(std::size_t i) const {
  if (i < 1 || i > syl_.size()) throw std::out_of_range("syllable index");
  return block(syl_.size() - i + 1);
}

Word Word::range(std::size_t i, std::size_t j) const {
  Word w;
  if (i < 1 || j > syl_.size()) throw std::out_of_range("syllable range");
  for (std::size_t k = i; k <= j; ++k) w.syl_.push_back(syl_[k - 1]);
  return w;
}

Word Word::prefix(std::size_t i) const {
  if (i > syl_.size()) throw std::out_of_range("prefix length");
  Word w;
  w.syl_.assign(syl_.begin(), syl_.begin() + static_cast<std::ptrdiff_t>(i));
  return w;
}

Word Word::suffix(std::size_t i) const {
  if (i > syl_.size()) throw std::out_of_range("suffix length");
  Word w;
  w.syl_.assign(syl_.end() - static_cast<std::ptrdiff_t>(i), syl_.end());
  return w;
}

Word Word::inverse() const {
  Word w;
  w.syl_.reserve(syl_.size());
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) w.syl_.push_back({it->gen, -it->exp});
  return w;
}

Word Word::pow(std::int64_t n) const {
  Word base = n < 0 ? inverse() : *this;
  if (n < 0) n = -n;
  Word r;
  while (n > 0) {
    if (n & 1) r *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return r;
}

Word Word::conj(const Word& h) const { return h.inverse() * *this * h; }

Word& Word::operator*=(const Word& o) {
  std::size_t k = 0;
  if (&o == this) {
    Word copy = o;
    return *this *= copy;
  }
  while (k < o.syl_.size() && !syl_.empty()) {
    const auto& s = o.syl_[k];
    auto& back = syl_.back();
    if (back.gen != s.gen) break;
    back.exp += s.exp;
    ++k;
    if (back.exp != 0) break;
    syl_.pop_back();
  }
  syl_.insert(syl_.end(), o.syl_.begin() + static_cast<std::ptrdiff_t>(k), o.syl_.end());
  return *this;
}

std::vector<Letter> Word::letters() const {
  std::vector<Letter> out;
  for (const auto& s : syl_) {
    int sign = s.exp > 0 ? 1 : -1;
    for (std::int64_t i = 0; i < (s.exp > 0 ? s.exp : -s.exp); ++i) out.push_back({s.gen, sign});
  }
  return out;
}

std::set<Gen> Word::support() const {
  std::set<Gen> out;
  for (const auto& s : syl_) out.insert(s.gen);
  return out;
}

std::string Word::str() const {
  if (syl_.empty()) return "1";
  std::string out;
  for (const auto& s : syl_) {
    if (!out.empty()) out += ' ';
    out += s.gen.str();
    if (s.exp != 1) out += "^" + std::to_string(s.exp);
  }
  return out;
}

bool Word::operator<(const Word& o) const {
  if (syl_.size() != o.syl_.size()) return syl_.size() < o.syl_.size();
  for (std::size_t i = 0; i < syl_.size(); ++i) {
    if (syl_[i].gen != o.syl_[i].gen) return syl_[i].gen < o.syl_[i].gen;
    if (syl_[i].exp != o.syl_[i].exp) return syl_[i].exp < o.syl_[i].exp;
  }
  return false;
}

Word commutator(const Word& x, const Word& y) { return x * y * x.inverse() * y.inverse(); }

Word reduce(const std::vector<Letter>& letters, const std::vector<Gen>* alphabet) {
  Word w;
  for (const auto& l : letters) {
    if (l.sign != 1 && l.sign != -1) throw ParseError("letter sign must be +1 or -1");
    if (alphabet) {
      bool ok = false;
      for (const auto& a : *alphabet) ok = ok || a == l.gen;
      if (!ok) throw ParseError("unknown generator '" + l.gen.str() + "'");
    }
    w.push_back({l.gen, l.sign});
  }
  return w;
}

std::vector<Syllable> syllables(const Word& w, const std::vector<Gen>* strict) {
  if (strict) {
    for (const auto& s : w.syllables()) {
      bool ok = false;
      for (const auto& a : *strict) ok = ok || a == s.gen;
      if (!ok) throw ParseError("generator '" + s.gen.str() + "' outside the declared alphabet");
    }
  }
  return w.syllables();
}

Word flatten(const std::vector<Syllable>& syls) { return Word::from_syllables(syls); }

std::size_t syllable_cancellation(const Word& g, const Word& h) {
  const auto& a = g.syllables();
  const auto& b = h.syllables();
  std::size_t k = 0;
  while (k < a.size() && k < b.size()) {
    const auto& x = a[a.size() - 1 - k];
    const auto& y = b[k];
    if (x.gen != y.gen || x.exp != -y.exp) break;
    ++k;
  }
  return k;
}

HomSpec HomSpec::identity(const std::vector<Gen>& alphabet) {
  HomSpec h;
  for (const auto& g : alphabet) h.set(g, Word(g));
  return h;
}

const Word& HomSpec::at(const Gen& g) const {
  auto it = map_.find(g);
  if (it == map_.end()) throw std::invalid_argument("generator '" + g.str() + "' outside homomorphism domain");
  return it->second;
}

std::vector<Gen> HomSpec::domain() const {
  std::vector<Gen> out;
  for (const auto& [g, w] : map_) out.push_back(g);
  return out;
}

Word apply_hom(const HomSpec& h, const Word& w) {
  Word out;
  for (const auto& s : w.syllables()) out *= h.at(s.gen).pow(s.exp);
  return out;
}

std::int64_t weight(const Word& w, const Gen& t) {
  std::int64_t n = 0;
  for (const auto& s : w.syllables())
    if (s.gen == t) n += s.exp;
  return n;
}

std::int64_t weight(const Word& w, const Gen& t, const HomSpec& basis) {
  auto dom = basis.domain();
  std::vector<Word> images;
  for (const auto& g : dom) images.push_back(basis.at(g));
  auto aut = SubgroupAutomaton::fold(images, dom);
  return agt::weight(aut.express(w), t);
}

std::string AbelianInvariants::str() const {
  std::string out = "Z^" + std::to_string(free_rank);
  for (const auto& t : torsion) out += " + Z/" + t.str();
  return out;
}

AbelianInvariants abelianize_snf(const Presentation& p) {
  std::map<Gen, std::size_t> col;
  for (std::size_t i = 0; i < p.generators.size(); ++i) col[p.generators[i]] = i;
  IntMatrix m;
  for (const auto& r : p.relators) {
    std::vector<BigInt> row(p.generators.size());
    for (const auto& s : r.syllables()) {
      auto it = col.find(s.gen);
      if (it == col.end()) throw ParseError("relator uses unknown generator '" + s.gen.str() + "'");
      row[it->second] += s.exp;
    }
    m.push_back(std::move(row));
  }
  AbelianInvariants out;
  out.invariant_factors = smith_diagonal(m);
  out.free_rank = p.generators.size() - out.invariant_factors.size();
  for (const auto& d : out.invariant_factors)
    if (d != 1) out.torsion.push_back(d);
  return out;
}

}  // namespace agt

std::size_t std::hash<agt::Word>::operator()(const agt::Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (const auto& s : w.syllables()) {
    h ^= s.gen.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h ^= std::hash<std::int64_t>()(s.exp) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}
