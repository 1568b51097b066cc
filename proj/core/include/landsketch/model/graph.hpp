#pragma once

#include <optional>
#include <string>
#include <vector>

#include "landsketch/model/relation.hpp"

namespace landsketch {

struct SceneNode {
  std::string id;
  std::string species;
  std::vector<std::string> attributes;

  bool operator==(const SceneNode&) const = default;
};

struct SceneEdge {
  std::string source;
  RelationKind relation = RelationKind::Left;
  std::string target;

  bool operator==(const SceneEdge&) const = default;
};

/// A validated scene graph. Construction normalizes every InFrontOf edge to
/// the reversed Behind edge and then enforces:
///   - node ids unique, non-empty and free of the serialization delimiters;
///   - species non-empty;
///   - edge endpoints exist and differ;
///   - at most one edge per unordered node pair (duplicates, inverse
///     restatements and contradictions are all rejected);
///   - the Behind subgraph is acyclic.
/// Throws Error(InvalidGraph) or Error(CyclicDepth).
class SceneGraph {
 public:
  SceneGraph() = default;
  SceneGraph(std::vector<SceneNode> nodes, std::vector<SceneEdge> edges);

  const std::vector<SceneNode>& nodes() const noexcept { return nodes_; }
  const std::vector<SceneEdge>& edges() const noexcept { return edges_; }

  bool empty() const noexcept { return nodes_.empty(); }
  std::size_t size() const noexcept { return nodes_.size(); }

  /// Index of the node in insertion order, or nullopt.
  std::optional<std::size_t> index_of(const std::string& id) const;
  const SceneNode* find(const std::string& id) const;

  /// Order-sensitive structural equality.
  bool operator==(const SceneGraph&) const = default;

 private:
  std::vector<SceneNode> nodes_;
  std::vector<SceneEdge> edges_;
};

/// Node-set and edge-multiset equality, ignoring insertion order.
bool same_graph(const SceneGraph& a, const SceneGraph& b);

/// True when the token can round-trip through the text formats: non-empty,
/// no surrounding whitespace or quotes, no newline and none of `<>[],:;|`.
bool is_serializable_token(const std::string& token);

}  // namespace landsketch
