#include "landsketch/model/json_io.hpp"

#include "landsketch/error.hpp"

namespace landsketch {

using nlohmann::json;

namespace {

// nlohmann throws its own exceptions on type mismatches; surface them as
// structured errors so callers see one error type.
template <typename Fn>
auto guarded(ErrorCode code, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(code, e.what());
  }
}

}  // namespace

void to_json(json& j, RelationKind kind) { j = std::string(to_string(kind)); }

void from_json(const json& j, RelationKind& kind) {
  auto text = j.get<std::string>();
  auto parsed = relation_from_string(text);
  if (!parsed) throw Error(ErrorCode::UnknownRelation, text);
  kind = *parsed;
}

void to_json(json& j, const SceneNode& node) {
  j = json{{"id", node.id}, {"species", node.species}, {"attributes", node.attributes}};
}

void from_json(const json& j, SceneNode& node) {
  node.id = j.at("id").get<std::string>();
  node.species = j.contains("species") ? j.at("species").get<std::string>() : std::string();
  node.attributes = j.value("attributes", std::vector<std::string>{});
}

void to_json(json& j, const SceneEdge& edge) {
  j = json{{"source", edge.source}, {"relation", edge.relation}, {"target", edge.target}};
}

void from_json(const json& j, SceneEdge& edge) {
  edge.source = j.at("source").get<std::string>();
  edge.relation = j.at("relation").get<RelationKind>();
  edge.target = j.at("target").get<std::string>();
}

json graph_to_json(const SceneGraph& graph) {
  return json{{"nodes", graph.nodes()}, {"edges", graph.edges()}};
}

SceneGraph graph_from_json(const json& j) {
  auto [nodes, edges] = guarded(ErrorCode::InvalidGraph, [&] {
    return std::pair{j.value("nodes", std::vector<SceneNode>{}),
                     j.value("edges", std::vector<SceneEdge>{})};
  });
  return SceneGraph(std::move(nodes), std::move(edges));
}

void to_json(json& j, const Canvas& canvas) {
  j = json{{"width", canvas.width}, {"height", canvas.height}};
}

void from_json(const json& j, Canvas& canvas) {
  canvas.width = j.at("width").get<int>();
  canvas.height = j.at("height").get<int>();
}

void to_json(json& j, const PlacedElement& e) {
  j = json{{"name", e.name},   {"x", e.x},           {"y", e.y},
           {"width", e.width}, {"height", e.height}, {"z", e.z}};
}

void from_json(const json& j, PlacedElement& e) {
  e.name = j.at("name").get<std::string>();
  e.x = j.at("x").get<int>();
  e.y = j.at("y").get<int>();
  e.width = j.at("width").get<int>();
  e.height = j.at("height").get<int>();
  e.z = j.at("z").get<int>();
}

json layout_to_json(const Layout& layout) {
  return json{{"canvas", layout.canvas()}, {"elements", layout.elements()}};
}

Layout layout_from_json(const json& j) {
  auto [canvas, elements] = guarded(ErrorCode::InvalidLayout, [&] {
    return std::pair{j.value("canvas", Canvas{}),
                     j.value("elements", std::vector<PlacedElement>{})};
  });
  return Layout(canvas, std::move(elements));
}

json scene_to_json(const SceneGraph* graph, const Layout* layout) {
  json j = json::object();
  if (graph) {
    j["nodes"] = graph->nodes();
    j["edges"] = graph->edges();
  }
  if (layout) {
    j["canvas"] = layout->canvas();
    j["elements"] = layout->elements();
  }
  return j;
}

json kb_to_json(const PlantKnowledgeBase& kb) {
  json entries = json::array();
  for (const auto& [name, spec] : kb.entries()) {
    entries.push_back({{"species", spec.species},
                       {"category", std::string(to_string(spec.category))},
                       {"aspect_ratio", spec.aspect_ratio},
                       {"canonical_height", spec.canonical_height}});
  }
  return json{{"depth_scale", kb.depth_scale()}, {"entries", entries}};
}

PlantKnowledgeBase kb_from_json(const json& j) {
  auto [specs, scale] = guarded(ErrorCode::InvalidArgument, [&] {
    std::vector<PlantSpec> specs;
    for (const auto& e : j.at("entries")) {
      specs.push_back({e.at("species").get<std::string>(),
                       category_from_string(e.at("category").get<std::string>()),
                       e.at("aspect_ratio").get<double>(),
                       e.at("canonical_height").get<double>()});
    }
    return std::pair{std::move(specs), j.value("depth_scale", 0.8)};
  });
  return PlantKnowledgeBase(std::move(specs), scale);
}

}  // namespace landsketch
