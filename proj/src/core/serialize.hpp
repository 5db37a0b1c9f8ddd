#pragma once

#include <string>

#include <json.hpp>

#include "core/graph.hpp"
#include "core/map_spec.hpp"
#include "core/mincut.hpp"

namespace zidlab {

using Json = nlohmann::json;

// {vertices, edges:[{src, action, dst, w}], initial, goals, base_reward};
// src/dst are indices into the vertices array, edge order is enumeration
// (BFS discovery) order.
Json graph_to_json(const InducedGraph &g);
InducedGraph graph_from_json(const Json &j);

Json cut_to_json(const CutReport &cut, const InducedGraph &g);
Json incentive_to_json(const IncentiveReport &r);

Json map_info_json(const MapSpec &spec);

// Density, cut and classification summary for one graph; the `analyze`
// subcommand's payload.
Json analyze_graph_json(const InducedGraph &g);

} // namespace zidlab
