#pragma once

#include <json.hpp>

#include "hypertess/audit.hpp"
#include "hypertess/graph.hpp"
#include "hypertess/set_models.hpp"

namespace hypertess {

// JSON shapes for reports. Doubles are written shortest-round-trip, so a
// value read back from a report compares equal to the one computed.
nlohmann::json to_json(const AuditReport& report);
nlohmann::json to_json(const CellReport& report);
nlohmann::json to_json(const MeanWidthEstimate& estimate);
nlohmann::json to_json(const L1Stat& stat);
/// Adjacency-list variant of the graph export.
nlohmann::json to_json(const TessellationGraph& graph);

}  // namespace hypertess
