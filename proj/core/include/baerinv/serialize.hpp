#pragma once

// Machine-readable output. Every integer is written as a decimal string so
// consumers never overflow; keys are emitted sorted.

#include <nlohmann/json.hpp>

#include <string_view>

#include "baerinv/abelian.hpp"
#include "baerinv/baer.hpp"

namespace baerinv {

using Json = nlohmann::json;

void to_json(Json& j, const AbelianStructure& a);
void from_json(const Json& j, AbelianStructure& a);

void to_json(Json& j, const SubgroupStructure& s);
void from_json(const Json& j, SubgroupStructure& s);

void to_json(Json& j, const CongruenceReport& r);
void from_json(const Json& j, CongruenceReport& r);

/// {"cap", "command", "engine_version", "parameters", "result"}
Json make_envelope(std::string_view command, Json parameters, Json result, int cap);

/// Compact single-line rendering.
std::string render_json(const Json& j);

}  // namespace baerinv
