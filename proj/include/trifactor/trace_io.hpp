#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "trifactor/audit.hpp"
#include "trifactor/engine.hpp"

namespace trifactor {

// Trace file schema, version 1. Edges always serialize as vertex pairs
// [u, v] with u < v, never as raw indices.
nlohmann::json trace_to_json(const GameTrace& trace);
GameTrace trace_from_json(const nlohmann::json& j);

std::string trace_to_string(const GameTrace& trace);  // stable field order, 2-space indent
GameTrace trace_from_string(const std::string& text);

GameTrace load_trace(const std::string& path);
void save_trace(const GameTrace& trace, const std::string& path);

nlohmann::json report_to_json(const AuditReport& report);

}  // namespace trifactor
