#include "agt/io.hpp"

#include <fstream>
#include <sstream>

namespace agt::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

Gen gen_from(const std::string& text) {
  Word w = Word::parse(text);
  if (w.length() != 1 || w.syl(0).exp != 1) throw ParseError("'" + text + "' is not a generator");
  return w.syl(0).gen;
}

std::vector<Gen> gens_from(const Json& j) {
  std::vector<Gen> out;
  for (const auto& g : j) out.push_back(gen_from(g.get<std::string>()));
  return out;
}

Json gens_to(const std::vector<Gen>& gs) {
  Json out = Json::array();
  for (const auto& g : gs) out.push_back(g.str());
  return out;
}

Json words_to(const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back(w.str());
  return out;
}

std::vector<Word> words_from(const Json& j) {
  std::vector<Word> out;
  for (const auto& w : j) out.push_back(Word::parse(w.get<std::string>()));
  return out;
}

}  // namespace

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& ex) {
    throw ParseError(path + ": " + ex.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

Json to_json(const Presentation& p) {
  return {{"generators", gens_to(p.generators)}, {"relators", words_to(p.relators)}};
}

Presentation presentation_from_json(const Json& j) {
  Presentation p;
  p.generators = gens_from(field(j, "generators"));
  for (const auto& r : field(j, "relators")) p.relators.push_back(Word::parse(r.get<std::string>(), &p.generators));
  return p;
}

Json to_json(const Amalgam& G) {
  Json fs = Json::array();
  for (std::size_t i = 0; i < G.factor_count(); ++i) {
    const auto& f = G.factor(i);
    Json im = Json::object();
    for (const auto& [z, w] : f.edge_images.map()) im[z.str()] = w.str();
    fs.push_back({{"name", f.name},
                  {"kind", f.kind == FactorKind::Free ? "free" : "free_abelian"},
                  {"alphabet", gens_to(f.alphabet)},
                  {"edge_images", im}});
  }
  return {{"type", "amalgam"}, {"edge", gens_to(G.edge_alphabet())}, {"factors", fs}};
}

Amalgam amalgam_from_json(const Json& j) {
  const std::string type = j.value("type", "amalgam");
  if (type == "free") {
    std::vector<FactorSpec> fs;
    for (const auto& g : gens_from(field(j, "generators"))) fs.push_back({g.str(), FactorKind::Free, {g}, {}});
    return Amalgam({}, std::move(fs));
  }
  if (type != "amalgam") throw ParseError("group type '" + type + "' is not an amalgam");
  const auto edge = gens_from(field(j, "edge"));
  std::vector<FactorSpec> fs;
  for (const auto& f : field(j, "factors")) {
    FactorSpec spec;
    spec.name = field(f, "name").get<std::string>();
    const std::string kind = f.value("kind", "free");
    if (kind == "free")
      spec.kind = FactorKind::Free;
    else if (kind == "free_abelian")
      spec.kind = FactorKind::FreeAbelian;
    else
      throw ParseError("unknown factor kind '" + kind + "'");
    spec.alphabet = gens_from(field(f, "alphabet"));
    const Json& im = f.contains("edge_images") ? f.at("edge_images") : Json::object();
    for (auto it = im.begin(); it != im.end(); ++it)
      spec.edge_images.set(gen_from(it.key()), Word::parse(it.value().get<std::string>(), &spec.alphabet));
    fs.push_back(std::move(spec));
  }
  try {
    return Amalgam(edge, std::move(fs));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
}

Json to_json(const Amalgam& G, const GtCertificate& c) {
  Json hs = Json::array();
  for (const auto& h : c.conjugators) hs.push_back(G.str(h));
  return {{"base", G.str(c.base)}, {"conjugators", hs}};
}

GtCertificate certificate_from_json(const Amalgam& G, const Json& j) {
  GtCertificate c;
  c.base = G.parse(field(j, "base").get<std::string>());
  for (const auto& h : field(j, "conjugators")) c.conjugators.push_back(G.parse(h.get<std::string>()));
  return c;
}

Json to_json(const std::vector<Word>& relators, const NclWitness& w) {
  Json terms = Json::array();
  for (const auto& t : w.terms)
    terms.push_back({{"relator", t.relator}, {"sign", t.sign}, {"conjugator", t.conjugator.str()}});
  return {{"relators", words_to(relators)}, {"target", w.target.str()}, {"terms", terms}};
}

std::pair<std::vector<Word>, NclWitness> ncl_from_json(const Json& j) {
  auto rels = words_from(field(j, "relators"));
  NclWitness w;
  w.target = Word::parse(field(j, "target").get<std::string>());
  for (const auto& t : field(j, "terms")) {
    NclTerm term;
    term.relator = field(t, "relator").get<std::size_t>();
    term.sign = field(t, "sign").get<int>();
    if (term.sign != 1 && term.sign != -1) throw ParseError("term sign must be 1 or -1");
    if (term.relator >= rels.size()) throw ParseError("term refers to a missing relator");
    term.conjugator = Word::parse(t.value("conjugator", ""));
    w.terms.push_back(std::move(term));
  }
  return {std::move(rels), std::move(w)};
}

Json to_json(const Amalgam& G, const ConjTuple& v) {
  Json es = Json::array();
  for (const auto& e : v.entries) es.push_back({{"t", G.str(e.t)}, {"g", G.str(e.g)}});
  return {{"group", to_json(G)}, {"entries", es}};
}

ConjTuple conj_tuple_from_json(const Amalgam& G, const Json& j) {
  ConjTuple v;
  for (const auto& e : field(j, "entries"))
    v.entries.push_back({G.parse(field(e, "t").get<std::string>()), G.parse(field(e, "g").get<std::string>())});
  return v;
}

Json to_json(const ExponentMatrix& e) { return {{"s", e.s}, {"m", e.m}, {"k", e.k}}; }

ExponentMatrix exponents_from_json(const Json& j) {
  ExponentMatrix e;
  e.s = field(j, "s").get<int>();
  e.m = field(j, "m").get<int>();
  e.k = field(j, "k").get<std::vector<std::vector<std::vector<std::int64_t>>>>();
  return e;
}

Json to_json(const NonLoGroup& g) {
  return {{"type", "nonlo"},
          {"exponents", to_json(g.e)},
          {"alpha", words_to(g.alpha)},
          {"beta", words_to(g.beta)},
          {"phi_alpha", words_to(g.phi_alpha)},
          {"group", to_json(g.group)}};
}

NonLoGroup nonlo_from_json(const Json& j) {
  if (j.value("type", "") != "nonlo") throw ParseError("not a non-left-orderable fixture");
  const ExponentMatrix e = exponents_from_json(field(j, "exponents"));
  const auto check = validate_exponents(e);
  if (!check.ok) throw ParseError("invalid exponent matrix: " + (check.errors.empty() ? "" : check.errors.front()));
  NonLoGroup g = build_nonlo(e);
  if (j.contains("alpha") && words_from(j.at("alpha")) != g.alpha)
    throw ParseError("stored alpha words differ from the exponents");
  return g;
}

Json to_json(const AbelianInvariants& a) {
  Json tor = Json::array();
  for (const auto& t : a.torsion) tor.push_back(t.str());
  return {{"free_rank", a.free_rank}, {"torsion", tor}, {"trivial", a.trivial()}, {"text", a.str()}};
}

Json report_json(const SuiteReport& r) { return Json::parse(r.to_json()); }

}  // namespace agt::io
