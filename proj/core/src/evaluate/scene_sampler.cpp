#include "landsketch/evaluate/scene_sampler.hpp"

#include <map>
#include <random>

#include "landsketch/error.hpp"

namespace landsketch::evaluate {
namespace {

// std distributions are implementation-defined; draw bounded values by
// hand so scenes are identical across standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : rng_() % n; }
  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 rng_;
};

std::string_view phrase(RelationKind kind) {
  switch (kind) {
    case RelationKind::Left: return "is positioned to the left of";
    case RelationKind::Right: return "is positioned to the right of";
    case RelationKind::Top: return "is located above";
    case RelationKind::Bottom: return "is located below";
    case RelationKind::Behind: return "stands behind";
    case RelationKind::InFrontOf: return "stands in front of";
  }
  return "is near";
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::string describe_scene(const SceneGraph& graph) {
  std::string text = "A realistic picture of a landscape design with ";
  const auto& nodes = graph.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0) text += (i + 1 == nodes.size()) ? " and " : ", ";
    text += "the " + nodes[i].id;
    if (!nodes[i].attributes.empty()) {
      text += " with";
      for (std::size_t k = 0; k < nodes[i].attributes.size(); ++k) {
        text += (k ? " and " : " ") + nodes[i].attributes[k];
      }
    }
  }
  text += ".";
  for (const auto& e : graph.edges()) {
    text += " The " + e.source + " " + std::string(phrase(e.relation)) + " the " + e.target + ".";
  }
  return text;
}

SceneSample random_scene(std::uint64_t seed, const PlantKnowledgeBase& kb, NodeRange nodes,
                         const std::vector<RelationKind>& relation_kinds) {
  if (kb.empty()) throw Error(ErrorCode::InvalidArgument, "empty knowledge base");
  if (nodes.min < 1 || nodes.max < nodes.min) {
    throw Error(ErrorCode::InvalidArgument, "bad node range");
  }
  std::vector<std::string> pool;
  for (const auto& [name, spec] : kb.entries()) {
    if (spec.category != PlantCategory::Structure) pool.push_back(name);
  }
  if (pool.empty()) pool = kb.species();

  Draw draw(mix_seed(seed, 0x5ce7e));
  const int n = nodes.min + static_cast<int>(draw.below(nodes.max - nodes.min + 1));
  std::vector<SceneNode> scene_nodes;
  std::map<std::string, int> used;
  for (int i = 0; i < n; ++i) {
    const std::string& species = pool[draw.below(pool.size())];
    const int copy = ++used[species];
    scene_nodes.push_back({copy == 1 ? species : species + "_" + std::to_string(copy), species, {}});
  }

  // Each later node hangs off one earlier node, which keeps every scene
  // satisfiable.
  std::vector<SceneEdge> edges;
  if (!relation_kinds.empty()) {
    for (int i = 1; i < n; ++i) {
      if (draw.unit() >= 0.85) continue;
      const auto j = static_cast<std::size_t>(draw.below(static_cast<std::uint64_t>(i)));
      const RelationKind kind = relation_kinds[draw.below(relation_kinds.size())];
      if (draw.below(2) == 0) {
        edges.push_back({scene_nodes[i].id, kind, scene_nodes[j].id});
      } else {
        edges.push_back({scene_nodes[j].id, kind, scene_nodes[i].id});
      }
    }
  }
  // Describe before normalization so "in front of" stays as sampled.
  SceneSample sample;
  sample.description = describe_scene(SceneGraph(scene_nodes, {}));
  for (const auto& e : edges) {
    sample.description +=
        " The " + e.source + " " + std::string(phrase(e.relation)) + " the " + e.target + ".";
  }
  sample.graph = SceneGraph(std::move(scene_nodes), std::move(edges));
  return sample;
}

}  // namespace landsketch::evaluate
