#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "landsketch/model/graph.hpp"
#include "landsketch/model/knowledge.hpp"

namespace landsketch::evaluate {

struct NodeRange {
  int min = 1;
  int max = 5;
};

struct SceneSample {
  SceneGraph graph;
  std::string description;
};

/// Seeded random scene: node count drawn from `nodes`, species drawn from
/// the kb (structures excluded when plants exist), edges forming a forest
/// over earlier nodes so the edge set is never contradictory or cyclic. The
/// description is rendered from a fixed sentence template.
SceneSample random_scene(std::uint64_t seed, const PlantKnowledgeBase& kb, NodeRange nodes = {},
                         const std::vector<RelationKind>& relation_kinds = {kAllRelations.begin(),
                                                                            kAllRelations.end()});

/// Sentence template used for random scenes and demonstrations.
std::string describe_scene(const SceneGraph& graph);

/// splitmix64 step; used to derive independent per-sample seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace landsketch::evaluate
