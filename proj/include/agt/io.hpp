#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "agt/amalgam.hpp"
#include "agt/casestudy.hpp"
#include "agt/gentorsion.hpp"
#include "agt/tamed.hpp"
#include "agt/word.hpp"

namespace agt::io {

using Json = nlohmann::json;

/// Reads a JSON file; throws ParseError with the path on failure.
Json read_file(const std::string& path);
void write_file(const std::string& path, const Json& j);

Json to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);

/// {"type": "amalgam", "edge": [...], "factors": [{"name", "kind", "alphabet", "edge_images"}]}.
Json to_json(const Amalgam& G);
/// Accepts the amalgam form and {"type": "free", "generators": [...]}, the
/// latter read as a free product of infinite cyclic factors.
Amalgam amalgam_from_json(const Json& j);

Json to_json(const Amalgam& G, const GtCertificate& c);
GtCertificate certificate_from_json(const Amalgam& G, const Json& j);

/// {"relators": [...], "target": word, "terms": [{"relator", "sign", "conjugator"}]}.
Json to_json(const std::vector<Word>& relators, const NclWitness& w);
std::pair<std::vector<Word>, NclWitness> ncl_from_json(const Json& j);

Json to_json(const Amalgam& G, const ConjTuple& v);
ConjTuple conj_tuple_from_json(const Amalgam& G, const Json& j);

Json to_json(const ExponentMatrix& e);
ExponentMatrix exponents_from_json(const Json& j);

/// {"type": "nonlo", "exponents", "alpha", "beta", "phi_alpha", "group"}.
Json to_json(const NonLoGroup& g);
/// Rebuilds the group from the stored exponents and checks the stored words.
NonLoGroup nonlo_from_json(const Json& j);

Json to_json(const AbelianInvariants& a);
Json report_json(const SuiteReport& r);

}  // namespace agt::io
