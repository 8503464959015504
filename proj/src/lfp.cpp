#include "agt/lfp.hpp"

#include <algorithm>
#include <stdexcept>

namespace agt {

LfpTrace LfpTrace::left(const std::vector<Word>& gs) {
  if (gs.empty()) throw std::invalid_argument("left-first product needs at least one factor");
  LfpTrace t;
  t.inputs_ = gs;
  for (const auto& g : gs) t.status_.emplace_back(g.length());
  std::vector<Syllable> comps;
  std::vector<std::optional<CompRef>> orig;
  Word direct;
  for (std::size_t j = 1; j <= gs.size(); ++j) {
    const auto& h = gs[j - 1].syllables();
    std::size_t k = 0;
    while (k < comps.size() && k < h.size() && comps[comps.size() - 1 - k].gen == h[k].gen &&
           comps[comps.size() - 1 - k].exp == -h[k].exp)
      ++k;
    for (std::size_t q = 1; q <= k; ++q) {
      const auto& o = orig[comps.size() - q];
      if (o) t.status_[o->first - 1][o->second - 1] = {CompStatus::Kind::Canceled, CompRef{j, q}, j};
      t.status_[j - 1][q - 1] = {CompStatus::Kind::Canceled, o, j};
    }
    comps.resize(comps.size() - k);
    orig.resize(orig.size() - k);
    std::size_t rest = k;
    if (!comps.empty() && k < h.size() && comps.back().gen == h[k].gen) {
      const auto& o = orig.back();
      if (o) t.status_[o->first - 1][o->second - 1] = {CompStatus::Kind::Merged, CompRef{j, k + 1}, j};
      t.status_[j - 1][k] = {CompStatus::Kind::Merged, o, j};
      comps.back().exp += h[k].exp;
      orig.back().reset();
      rest = k + 1;
    }
    for (std::size_t q = rest; q < h.size(); ++q) {
      comps.push_back(h[q]);
      orig.push_back(CompRef{j, q + 1});
    }
    direct *= gs[j - 1];
    t.partials_.push_back(Word::from_syllables(comps));
    if (!(t.partials_.back() == direct)) throw std::logic_error("left-first trace diverged from the product");
  }
  t.origins_ = orig;
  return t;
}

LfpTrace LfpTrace::right(const std::vector<Word>& gs) {
  if (gs.empty()) throw std::invalid_argument("right-first product needs at least one factor");
  const std::size_t n = gs.size();
  std::vector<Word> inv;
  for (std::size_t q = n; q-- > 0;) inv.push_back(gs[q].inverse());
  const LfpTrace L = left(inv);
  auto map = [&](const CompRef& r) {
    const std::size_t i = n - r.first + 1;
    return CompRef{i, gs[i - 1].length() - r.second + 1};
  };
  LfpTrace t;
  t.inputs_ = gs;
  for (const auto& g : gs) t.status_.emplace_back(g.length());
  for (std::size_t q = 1; q <= n; ++q)
    for (std::size_t p = 1; p <= inv[q - 1].length(); ++p) {
      CompStatus st = L.status(q, p);
      if (st.partner) st.partner = map(*st.partner);
      if (st.step) st.step = n - st.step + 1;
      const CompRef at = map({q, p});
      t.status_[at.first - 1][at.second - 1] = st;
    }
  for (const auto& w : L.partials_) t.partials_.push_back(w.inverse());
  for (auto it = L.origins_.rbegin(); it != L.origins_.rend(); ++it)
    t.origins_.push_back(*it ? std::optional<CompRef>(map(**it)) : std::nullopt);
  return t;
}

bool LfpTrace::is_unaltered(std::size_t i, std::size_t pos) const {
  return status(i, pos).kind == CompStatus::Kind::Unaltered;
}

bool LfpTrace::cancels(CompRef x, CompRef y) const {
  const auto& st = status(x.first, x.second);
  return st.kind == CompStatus::Kind::Canceled && st.partner && *st.partner == y;
}

std::vector<std::pair<CompRef, CompRef>> LfpTrace::cancellations() const {
  std::vector<std::pair<CompRef, CompRef>> out;
  for (std::size_t i = 1; i <= status_.size(); ++i)
    for (std::size_t p = 1; p <= status_[i - 1].size(); ++p) {
      const auto& st = status_[i - 1][p - 1];
      if (st.kind == CompStatus::Kind::Canceled && st.partner && st.partner->first > i)
        out.push_back({CompRef{i, p}, *st.partner});
    }
  return out;
}

bool LfpTrace::consistent() const {
  std::vector<CompRef> unaltered, survivors;
  for (std::size_t i = 1; i <= status_.size(); ++i)
    for (std::size_t p = 1; p <= status_[i - 1].size(); ++p)
      if (is_unaltered(i, p)) unaltered.push_back({i, p});
  const auto& prod = product();
  if (origins_.size() != prod.length()) return false;
  for (std::size_t q = 0; q < origins_.size(); ++q) {
    if (!origins_[q]) continue;
    const auto& o = *origins_[q];
    if (!(inputs_[o.first - 1].block(o.second) == prod.block(q + 1))) return false;
    survivors.push_back(o);
  }
  return survivors == unaltered && std::is_sorted(survivors.begin(), survivors.end());
}

std::vector<std::string> check_pair_cancellation(const LfpTrace& t) {
  std::vector<std::string> out;
  const auto& g = t.inputs();
  for (const auto& [x, y] : t.cancellations()) {
    const std::size_t r = g[x.first - 1].length() - x.second + 1;
    Word w = g[x.first - 1].suffix(r);
    for (std::size_t k = x.first + 1; k < y.first; ++k) w *= g[k - 1];
    w *= g[y.first - 1].prefix(y.second);
    if (!w.is_identity())
      out.push_back("components (" + std::to_string(x.first) + "," + std::to_string(x.second) + ") and (" +
                    std::to_string(y.first) + "," + std::to_string(y.second) + ") cancel but the block is " +
                    w.str());
  }
  return out;
}

}  // namespace agt
