#pragma once

#include <nlohmann/json.hpp>

#include "landsketch/model/graph.hpp"
#include "landsketch/model/knowledge.hpp"
#include "landsketch/model/layout.hpp"

// JSON field names match the type fields. Decoding validates and throws
// landsketch::Error on invariant violations.
namespace landsketch {

void to_json(nlohmann::json& j, RelationKind kind);
void from_json(const nlohmann::json& j, RelationKind& kind);

void to_json(nlohmann::json& j, const SceneNode& node);
void from_json(const nlohmann::json& j, SceneNode& node);
void to_json(nlohmann::json& j, const SceneEdge& edge);
void from_json(const nlohmann::json& j, SceneEdge& edge);

nlohmann::json graph_to_json(const SceneGraph& graph);
SceneGraph graph_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const Canvas& canvas);
void from_json(const nlohmann::json& j, Canvas& canvas);
void to_json(nlohmann::json& j, const PlacedElement& element);
void from_json(const nlohmann::json& j, PlacedElement& element);

nlohmann::json layout_to_json(const Layout& layout);
Layout layout_from_json(const nlohmann::json& j);

/// {nodes, edges, elements, canvas}; either half may be absent.
nlohmann::json scene_to_json(const SceneGraph* graph, const Layout* layout);

nlohmann::json kb_to_json(const PlantKnowledgeBase& kb);
PlantKnowledgeBase kb_from_json(const nlohmann::json& j);

}  // namespace landsketch
