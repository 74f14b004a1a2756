#include "hypertess/report.hpp"

namespace hypertess {

using nlohmann::json;

json to_json(const AuditReport& report) {
  json worst = json::array();
  for (const auto& s : report.worst_pairs) {
    json p = {{"i", s.i}, {"j", s.j}};
    if (report.kind == "affine") {
      p["d_euclid"] = s.d_geo;
      p["d_ham"] = s.d_ham;
    } else {
      p["d_geo"] = s.d_geo;
      p["d_ham"] = s.d_ham;
      if (s.d_soft) p["d_soft"] = *s.d_soft;
    }
    p["error"] = s.error;
    worst.push_back(std::move(p));
  }
  json out = {
      {"kind", report.kind},
      {"m", report.m},
      {"n", report.n},
      {"seed", report.seed.value},
      {"stream_id", report.seed.stream_id},
      {"t", report.t},
      {"pairs", report.pairs_evaluated},
      {"delta_max", report.delta_max},
      {"mean_abs_error", report.mean_abs_error},
      {"bound", report.theorem_bound ? json(*report.theorem_bound) : json(nullptr)},
      {"passed", report.passed},
      {"renormalized_inputs", report.renormalized_inputs},
      {"worst_pairs", std::move(worst)},
  };
  if (report.lambda) out["lambda"] = *report.lambda;
  return out;
}

json to_json(const CellReport& report) {
  json occupancy = json::array();
  for (const auto& [size, cells] : report.occupancy) {
    occupancy.push_back({{"size", size}, {"cells", cells}});
  }
  return {
      {"kind", "cells"},
      {"cell_count", report.cell_count},
      {"largest_cell", report.largest_cell},
      {"max_cell_diameter_geodesic", report.max_cell_diameter_geodesic},
      {"max_cell_diameter_euclidean", report.max_cell_diameter_euclidean},
      {"offending_code", report.offending_code ? json(report.offending_code->to_hex()) : json(nullptr)},
      {"occupancy", std::move(occupancy)},
  };
}

json to_json(const MeanWidthEstimate& e) {
  return {
      {"kind", "meanwidth"},
      {"gaussian_width", e.gaussian_width},
      {"std_error", e.std_error},
      {"trials", e.trials},
      {"spherical_width", e.spherical_width},
      {"c_n", e.c_n},
      {"diff_width", e.diff_width},
      {"diff_std_error", e.diff_std_error},
  };
}

json to_json(const L1Stat& stat) {
  return {{"kind", "l1"}, {"z", stat.z}, {"pair_defect", stat.pair_defect}};
}

json to_json(const TessellationGraph& graph) {
  json nodes = json::array();
  for (std::size_t u = 0; u < graph.nodes.size(); ++u) {
    nodes.push_back({{"id", u},
                     {"code", graph.nodes[u].code.to_hex()},
                     {"points", graph.nodes[u].points},
                     {"neighbors", graph.adjacency[u]}});
  }
  return {{"kind", "graph"}, {"m", graph.m}, {"edges", graph.edges.size()}, {"nodes", std::move(nodes)}};
}

}  // namespace hypertess
