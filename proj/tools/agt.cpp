// Command-line front end. Exit codes: 0 verified or none found, 1 refuted or
// found, 2 inconclusive, capped, or bad input.

#include <algorithm>
#include <iostream>
#include <sstream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "agt/casestudy.hpp"
#include "agt/gentorsion.hpp"
#include "agt/io.hpp"

using namespace agt;
using io::Json;

namespace {

struct Options {
  std::string group, cert, ncl, elem, out, family, seeds, which = "beta", pres;
  bool free = false;
  std::size_t radius = 2, max_n = 3, max_k = 3, hradius = 1, cprod = 1, node_cap = 1'000'000;
  std::size_t factor = 0, trials = 100;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  int s = 10, m = 8, bs_m = 2;
  std::size_t x = 3;
  std::string suite;
};

void emit(const Options& o, const Json& j) {
  if (o.out.empty())
    std::cout << j.dump(2) << "\n";
  else
    io::write_file(o.out, j);
}

SearchBounds bounds(const Options& o, std::size_t n) {
  SearchBounds b;
  b.radius = o.radius;
  b.max_n = n;
  b.hradius = o.hradius;
  b.cprod = o.cprod;
  b.node_cap = o.node_cap;
  b.seed = o.seed;
  b.jobs = o.jobs;
  return b;
}

int cmd_verify(const Options& o) {
  if (!o.ncl.empty()) {
    if (!o.free) throw ParseError("--ncl witnesses are checked in a free group; pass --free");
    auto [rels, w] = io::ncl_from_json(io::read_file(o.ncl));
    const bool ok = verify_ncl_witness(rels, w);
    std::cout << (ok ? "verified" : "refuted") << ": product " << ncl_product(rels, w).str() << "\n";
    return ok ? 0 : 1;
  }
  if (o.cert.empty()) throw ParseError("verify needs --cert or --ncl");
  Json gj = o.group.empty() ? Json{{"type", "free"}, {"generators", {"a", "b"}}} : io::read_file(o.group);
  const Amalgam G = io::amalgam_from_json(gj);
  const GtCertificate c = io::certificate_from_json(G, io::read_file(o.cert));
  const bool ok = verify_gt_certificate(G, c);
  std::cout << (ok ? "verified" : "refuted") << ": n = " << c.conjugators.size() << "\n";
  return ok ? 0 : 1;
}

int cmd_search_gt(const Options& o) {
  const Amalgam G = io::amalgam_from_json(io::read_file(o.group));
  const AmalgamElement g = G.parse(o.elem);
  const auto r = search_gt(G, g, bounds(o, o.max_n));
  Json rep{{"element", G.str(g)}, {"nodes", r.nodes}, {"seed", o.seed},
           {"bounds", {{"radius", o.radius}, {"max_n", o.max_n}, {"node_cap", o.node_cap}}}};
  switch (r.status) {
    case SearchOutcome::Status::Found:
      rep["status"] = "found";
      rep["n"] = r.cert->conjugators.size();
      rep["certificate"] = io::to_json(G, *r.cert);
      emit(o, rep);
      return 1;
    case SearchOutcome::Status::Capped:
      rep["status"] = "capped";
      emit(o, rep);
      return 2;
    default:
      rep["status"] = "none-found";
      emit(o, rep);
      return 0;
  }
}

// Ambient alphabet and subgroup automaton described by a group file.
struct SubgroupData {
  std::vector<Gen> alphabet;
  std::shared_ptr<const SubgroupAutomaton> H;
  std::vector<Word> default_seeds;
};

SubgroupData subgroup_data(const Options& o) {
  const Json j = io::read_file(o.group);
  const std::string type = j.value("type", "amalgam");
  SubgroupData d;
  if (type == "nonlo") {
    auto g = io::nonlo_from_json(j);
    d.alphabet = {Gen("a"), Gen("b")};
    d.H = g.C;
    d.default_seeds = {g.alpha.front()};
  } else if (type == "subgroup") {
    for (const auto& x : j.at("alphabet")) d.alphabet.push_back(Word::parse(x.get<std::string>()).syl(0).gen);
    std::vector<Word> gens;
    for (const auto& x : j.at("generators")) gens.push_back(Word::parse(x.get<std::string>(), &d.alphabet));
    d.H = std::make_shared<SubgroupAutomaton>(SubgroupAutomaton::fold(gens));
    d.default_seeds = {gens.front()};
  } else {
    const Amalgam G = io::amalgam_from_json(j);
    if (o.factor >= G.factor_count()) throw ParseError("--factor out of range");
    if (G.factor(o.factor).kind != FactorKind::Free || !G.edge_automaton(o.factor))
      throw ParseError("the chosen factor must be free with a nontrivial edge group");
    d.alphabet = G.factor(o.factor).alphabet;
    d.H = std::make_shared<SubgroupAutomaton>(*G.edge_automaton(o.factor));
    d.default_seeds = {d.H->generators().front()};
  }
  return d;
}

int report_exit(const Options& o, const SuiteReport& r) {
  Json j = io::report_json(r);
  j["seed"] = o.seed;
  emit(o, j);
  return r.exit_code();
}

int cmd_search_rtf(const Options& o) {
  const auto d = subgroup_data(o);
  return report_exit(o, check_rtf(d.alphabet, *d.H, bounds(o, o.max_k)));
}

int cmd_search_mm(const Options& o) {
  const auto d = subgroup_data(o);
  std::vector<Word> seeds = d.default_seeds;
  if (!o.seeds.empty()) {
    seeds.clear();
    std::stringstream ss(o.seeds);
    for (std::string w; std::getline(ss, w, ';');) seeds.push_back(Word::parse(w, &d.alphabet));
  }
  return report_exit(o, check_multimalnormal(d.alphabet, *d.H, seeds, bounds(o, o.max_k)));
}

int cmd_search_family(const Options& o) {
  const Amalgam G = io::amalgam_from_json(io::read_file(o.group));
  const Json fj = io::read_file(o.family);
  FamilySpec F;
  for (const auto& fam : fj.at("members")) {
    std::vector<FamilyMember> ms;
    for (const auto& m : fam) {
      FamilyMember fm{m.at("label").get<std::string>(), {}};
      for (const auto& s : m.at("seeds")) fm.seeds.push_back(Word::parse(s.get<std::string>()));
      ms.push_back(std::move(fm));
    }
    F.members.push_back(std::move(ms));
  }
  return report_exit(o, check_family(G, F, bounds(o, o.max_n)));
}

int cmd_build(const std::string& target, const Options& o) {
  if (target == "w") {
    emit(o, io::to_json(build_w_presentation()));
  } else if (target == "onerelator") {
    Json j = io::to_json(build_onerelator_amalgam().group);
    j["presentation"] = io::to_json(onerelator_presentation());
    emit(o, j);
  } else if (target == "nonlo") {
    const auto e = sample_exponents(o.s, o.m, o.seed);
    Json j = io::to_json(build_nonlo(e));
    j["seed"] = o.seed;
    emit(o, j);
  } else if (target == "bs") {
    const auto w = bs_commutator_witness(o.bs_m);
    if (!o.cert.empty()) io::write_file(o.cert, io::to_json(w.group, w.cert));
    emit(o, io::to_json(w.group));
  } else if (target == "gamma") {
    if (o.which == "alpha")
      emit(o, io::to_json({gamma_relator(0)}, gamma_alpha_witness()));
    else if (o.which == "beta")
      emit(o, io::to_json(gamma_beta_relators(), gamma_beta_witness()));
    else
      throw ParseError("--which must be alpha or beta");
  } else {
    throw ParseError("unknown build target '" + target + "'");
  }
  return 0;
}

int cmd_suite(const Options& o) {
  std::vector<std::string> names;
  if (o.suite == "all") {
    names = suite_names();
  } else {
    const auto all = suite_names();
    if (std::find(all.begin(), all.end(), o.suite) == all.end()) {
      std::cerr << "unknown suite '" << o.suite << "'\n";
      return 2;
    }
    names = {o.suite};
  }
  SuiteOptions so;
  so.s = o.s;
  so.m = o.m;
  so.x = o.x;
  Json reports = Json::array();
  int code = 0;
  for (const auto& n : names) {
    const auto r = run_suite(n, o.trials, o.seed, so);
    std::cerr << n << ": checked " << r.checked << ", skipped " << r.skipped << ", violations "
              << r.violations.size() << ", inconclusive " << r.inconclusive.size() << "\n";
    reports.push_back(io::report_json(r));
    const int c = r.exit_code();
    if (c == 1 || (c == 2 && code == 0)) code = c;
  }
  Json j{{"seed", o.seed}, {"trials", o.trials}, {"reports", reports}, {"exit_code", code}};
  if (!o.out.empty()) io::write_file(o.out, j);
  return code;
}

int cmd_abelianize(const Options& o) {
  const std::string path = o.pres.empty() ? o.group : o.pres;
  if (path.empty()) throw ParseError("abelianize needs --group with a presentation file");
  const auto inv = abelianize_snf(io::presentation_from_json(io::read_file(path)));
  std::cout << inv.str() << "\n";
  if (!o.out.empty()) io::write_file(o.out, io::to_json(inv));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized torsion and amalgam toolkit"};
  app.require_subcommand(1);
  Options o;

  auto* verify = app.add_subcommand("verify", "check a certificate or normal-closure witness");
  verify->add_option("--group", o.group, "amalgam JSON");
  verify->add_option("--cert", o.cert, "certificate JSON");
  verify->add_option("--ncl", o.ncl, "normal-closure witness JSON");
  verify->add_flag("--free", o.free, "work in the free group of the witness");

  auto add_bounds = [&](CLI::App* c) {
    c->add_option("--group", o.group, "group JSON")->required();
    c->add_option("--radius", o.radius, "ball radius in letters");
    c->add_option("--max-n", o.max_n, "maximal number of conjugates");
    c->add_option("--max-k", o.max_k, "maximal number of factors");
    c->add_option("--hradius", o.hradius, "subgroup ball radius");
    c->add_option("--cprod", o.cprod, "factors in a C'-ball product");
    c->add_option("--node-cap", o.node_cap, "node budget");
    c->add_option("--seed", o.seed, "seed recorded in the report");
    c->add_option("--jobs", o.jobs, "worker threads");
    c->add_option("--factor", o.factor, "factor index for amalgam inputs");
    c->add_option("--out", o.out, "output file");
  };
  auto* search = app.add_subcommand("search", "bounded searches");
  search->require_subcommand(1);
  auto* gt = search->add_subcommand("gt", "search a generalized-torsion certificate");
  add_bounds(gt);
  gt->add_option("--elem", o.elem, "element")->required();
  auto* rtf = search->add_subcommand("rtf", "search violations of relative torsion-freeness");
  add_bounds(rtf);
  auto* mm = search->add_subcommand("mm", "search violations of multi-malnormality");
  add_bounds(mm);
  mm->add_option("--seeds", o.seeds, "semicolon-separated seeds of C'");
  auto* fam = search->add_subcommand("family", "check a family of normal subsemigroups");
  add_bounds(fam);
  fam->add_option("--family", o.family, "family JSON")->required();

  std::string target;
  auto* build = app.add_subcommand("build", "write group fixtures");
  build->add_option("target", target, "w | onerelator | nonlo | bs | gamma")->required();
  build->add_option("--s", o.s, "columns");
  build->add_option("--m", o.m, "rows");
  build->add_option("--seed", o.seed, "exponent seed");
  build->add_option("--bs-m", o.bs_m, "m for BS(m,m)");
  build->add_option("--cert", o.cert, "certificate output for bs");
  build->add_option("--which", o.which, "alpha | beta for gamma");
  build->add_option("--out", o.out, "output file");

  auto* suite = app.add_subcommand("suite", "run property suites");
  suite->add_option("name", o.suite, "suite name or all")->required();
  suite->add_option("--trials", o.trials, "trials per suite");
  suite->add_option("--seed", o.seed, "seed");
  suite->add_option("--s", o.s, "columns");
  suite->add_option("--m", o.m, "rows");
  suite->add_option("--x", o.x, "trace parameter");
  suite->add_option("--jobs", o.jobs, "unused; suites run sequentially");
  suite->add_option("--out", o.out, "report file");

  auto* ab = app.add_subcommand("abelianize", "abelian invariants of a presentation");
  ab->add_option("--group", o.pres, "presentation JSON")->required();
  ab->add_option("--out", o.out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*verify) return cmd_verify(o);
    if (*gt) return cmd_search_gt(o);
    if (*rtf) return cmd_search_rtf(o);
    if (*mm) return cmd_search_mm(o);
    if (*fam) return cmd_search_family(o);
    if (*build) return cmd_build(target, o);
    if (*suite) return cmd_suite(o);
    if (*ab) return cmd_abelianize(o);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
