#pragma once

#include <string>

#include "json.hpp"

#include "quatlat/counting.hpp"

namespace quatlat {

using Json = nlohmann::ordered_json;

// Machine reports share a schema: {"schema_version": "1", "command": ...}.
// Field order is fixed and no timestamps are emitted, so identical
// invocations produce byte-identical output.

Json report_table(int precision);
Json report_case(const std::vector<int>& nbar, int p, int precision);
Json report_units(int p);

std::string render_table_markdown(const Json& table_report);
std::string render_case_markdown(const Json& case_report);
std::string render_units_markdown(const Json& units_report);

} // namespace quatlat
