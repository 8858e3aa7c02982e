#pragma once

#include <string>

#include "delta/elimination/reduce.hpp"
#include "json.hpp"

namespace delta {

nlohmann::ordered_json certificate_json(const NonzeroCertificate& c);
nlohmann::ordered_json trace_json(const ReductionTrace& t);

enum class TraceFormat { json, text };
std::string emit_trace(const ReductionTrace& t, TraceFormat format);

std::string_view to_string(OutcomeKind k);

}  // namespace delta
