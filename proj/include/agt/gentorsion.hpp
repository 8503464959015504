#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agt/amalgam.hpp"

namespace agt {

struct GtCertificate {
  AmalgamElement base;
  std::vector<AmalgamElement> conjugators;
};

/// True iff base != 1 and base^{h_1} ... base^{h_n} = 1.
bool verify_gt_certificate(const Amalgam& G, const GtCertificate& c);

struct NclTerm {
  std::size_t relator = 0;
  int sign = 1;
  Word conjugator;
};

struct NclWitness {
  Word target;
  std::vector<NclTerm> terms;
};

/// Product of (r_i^sign)^{conjugator} over the terms.
Word ncl_product(const std::vector<Word>& relators, const NclWitness& w);
bool verify_ncl_witness(const std::vector<Word>& relators, const NclWitness& w);

/// Radii count letters over the generators of the ambient group.
struct SearchBounds {
  std::size_t radius = 2;
  std::size_t max_n = 3;
  std::size_t node_cap = 1'000'000;
  std::uint64_t seed = 0;
  /// Subgroup ball radius: products of at most this many subgroup generators.
  std::size_t hradius = 1;
  /// Number of factors in a C'-ball product.
  std::size_t cprod = 1;
  unsigned jobs = 1;
};

/// Elements of G spelled by words of at most `radius` letters, deduplicated,
/// sorted by (shortest spelling, text form).
std::vector<AmalgamElement> ball(const Amalgam& G, std::size_t radius);
/// Same for a free group, as reduced words.
std::vector<Word> free_ball(const std::vector<Gen>& alphabet, std::size_t radius);
/// Products of at most `count` generators of H (and their inverses).
std::vector<Word> subgroup_ball(const std::vector<Word>& gens, std::size_t count);

struct BallResult {
  std::vector<AmalgamElement> elements;
  bool capped = false;
  std::size_t nodes = 0;
};

/// Products s_1^{h_1} ... s_k^{h_k}, k <= max_n, h_j in the radius ball.
BallResult nss_ball(const Amalgam& G, const std::vector<AmalgamElement>& R, const SearchBounds& b);

struct SearchOutcome {
  enum class Status { Found, NoneFound, Capped } status = Status::NoneFound;
  std::optional<GtCertificate> cert;
  std::size_t nodes = 0;
};

SearchOutcome search_gt(const Amalgam& G, const AmalgamElement& g, const SearchBounds& b);

/// The double A *_C A' built from factor `factor` of G, with primed copy.
Amalgam double_of(const Amalgam& G, std::size_t factor);

struct BergmanViolation {
  Word a;
  std::vector<Word> c;  // edge words c_1..c_n
};

/// Certificate for a'a^{-1} in the double of A over C.
GtCertificate bergman_witness(const Amalgam& D, const BergmanViolation& v);

struct BsWitness {
  Amalgam group;
  GtCertificate cert;
};

BsWitness bs_commutator_witness(int m);
Amalgam bs_model(int m);

struct Violation {
  std::string what;
  std::uint64_t seed = 0;
  std::vector<std::pair<std::string, std::string>> inputs;
};

struct SuiteReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t nodes = 0;
  bool capped = false;
  std::vector<Violation> violations;
  std::vector<Violation> inconclusive;
  std::vector<std::pair<std::string, std::string>> params;
  /// 0 clean, 1 violation, 2 inconclusive or capped.
  int exit_code() const;
  std::string to_json() const;
};

/// Searches g outside H and h_i in H with g h_1 g h_2 ... g h_k = 1, k <= max_n.
SuiteReport check_rtf(const std::vector<Gen>& alphabet, const SubgroupAutomaton& H, const SearchBounds& b);

/// Flags products c_1^{a_1} ... c_n^{a_n} landing in C, with c_i in the C'-ball
/// and a_i outside C. Throws when 1 is in the C'-ball.
SuiteReport check_multimalnormal(const std::vector<Gen>& alphabet, const SubgroupAutomaton& C,
                                 const std::vector<Word>& seeds, const SearchBounds& b);

struct FamilyMember {
  std::string label;
  std::vector<Word> seeds;
};

/// For each factor, its family of normal subsemigroups given by seeds.
struct FamilySpec {
  std::vector<std::vector<FamilyMember>> members;
};

/// Covering is checked on the factor balls of letter radius b.radius; member
/// NSS-balls use conjugator radius b.hradius and at most b.max_n factors.
/// Intersection mismatches are inconclusive, uncovered elements are violations.
SuiteReport check_family(const Amalgam& G, const FamilySpec& F, const SearchBounds& b);

/// Elements of NSS_A({alpha}) ∩ C must appear in NSS_C({alpha}) at enlarged bounds.
SuiteReport nss_intersection_check(const Amalgam& G, std::size_t factor, const std::vector<Word>& alphas,
                                   const SearchBounds& b);

struct SuiteOptions {
  int s = 10;
  int m = 8;
  std::size_t x = 3;
};

std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, std::size_t trials, std::uint64_t seed,
                      const SuiteOptions& opt = {});

}  // namespace agt
