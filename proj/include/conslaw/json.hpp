#ifndef CONSLAW_JSON_HPP
#define CONSLAW_JSON_HPP

#include <json.hpp>

#include "conslaw/harness.hpp"
#include "conslaw/nullspace.hpp"
#include "conslaw/selection.hpp"

namespace conslaw {

nlohmann::json toJson(const SvdAnalysis& analysis);
nlohmann::json toJson(const BoundReport& report);
nlohmann::json toJson(const CandidateReport& report);
nlohmann::json toJson(const DiscoveryResult& result);
nlohmann::json toJson(const ExperimentReport& report);

} // namespace conslaw

#endif
