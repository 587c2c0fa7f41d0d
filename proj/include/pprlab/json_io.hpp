#pragma once
// JSON views of the report types plus a deterministic serializer: doubles are
// printed with 17 significant digits so parse -> dump round-trips are
// byte-identical and lossless.

#include <string>

#include <json.hpp>

#include "pprlab/complexity.hpp"
#include "pprlab/estimators.hpp"
#include "pprlab/lab.hpp"

namespace pprlab {

using Json = nlohmann::ordered_json;

Json to_json(const QueryTotals& totals);
Json to_json(const EstimateReport& report);
Json to_json(const ComplexityProfile& profile, bool include_breakpoints = true);
Json to_json(const SurgeryRecord& record);

// Deterministic dump: 2-space indent, "%.17g" doubles, insertion-ordered keys.
std::string dump_json(const Json& j);

}  // namespace pprlab
