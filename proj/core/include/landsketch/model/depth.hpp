#pragma once

#include <map>
#include <string>
#include <vector>

#include "landsketch/model/graph.hpp"

namespace landsketch {

/// Longest-path depth from the frontmost layer: a node that is behind
/// nothing has depth 0, otherwise depth(a) = 1 + max depth(b) over edges
/// (a Behind b). InFrontOf edges count as reversed Behind edges. Throws
/// Error(CyclicDepth) naming a node on the cycle.
std::map<std::string, int> derive_depths(const SceneGraph& graph);

/// Same depths, indexed by node position in the graph.
std::vector<int> derive_depth_vector(const SceneGraph& graph);

/// Turns depths into a z permutation: sort by (depth, node order), the first
/// gets z 0. Indexed by node position.
std::vector<int> depth_ranks_to_z(const std::vector<int>& depths);

}  // namespace landsketch
