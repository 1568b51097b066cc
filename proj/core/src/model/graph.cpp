#include "landsketch/model/graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "landsketch/error.hpp"
#include "landsketch/model/depth.hpp"

namespace landsketch {

bool is_serializable_token(const std::string& token) {
  if (token.empty()) return false;
  if (std::isspace(static_cast<unsigned char>(token.front())) ||
      std::isspace(static_cast<unsigned char>(token.back()))) {
    return false;
  }
  const auto quote = [](char c) { return c == '"' || c == '\'' || c == '`'; };
  if (quote(token.front()) || quote(token.back())) return false;
  return token.find_first_of("<>[],:;|\n\r") == std::string::npos;
}

SceneGraph::SceneGraph(std::vector<SceneNode> nodes, std::vector<SceneEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  std::set<std::string> ids;
  for (const auto& node : nodes_) {
    if (!is_serializable_token(node.id)) {
      throw Error(ErrorCode::InvalidGraph, "bad node id '" + node.id + "'");
    }
    if (!ids.insert(node.id).second) {
      throw Error(ErrorCode::InvalidGraph, "duplicate node id '" + node.id + "'");
    }
    if (!is_serializable_token(node.species)) {
      throw Error(ErrorCode::InvalidGraph,
                  "bad species '" + node.species + "' on node '" + node.id + "'");
    }
    for (const auto& attr : node.attributes) {
      if (!is_serializable_token(attr)) {
        throw Error(ErrorCode::InvalidGraph,
                    "bad attribute '" + attr + "' on node '" + node.id + "'");
      }
    }
  }

  // One positional and one depth relation per unordered pair at most.
  // Depth entries remember their source so a reversed pair reads as a cycle.
  std::map<std::tuple<std::string, std::string, bool>, std::string> pairs;
  for (auto& edge : edges_) {
    if (edge.relation == RelationKind::InFrontOf) {
      std::swap(edge.source, edge.target);
      edge.relation = RelationKind::Behind;
    }
    const std::string fragment = "<" + edge.source + ", " +
                                 std::string(to_string(edge.relation)) + ", " +
                                 edge.target + ">";
    if (!ids.count(edge.source) || !ids.count(edge.target)) {
      throw Error(ErrorCode::InvalidGraph, "unknown endpoint in " + fragment);
    }
    if (edge.source == edge.target) {
      throw Error(ErrorCode::InvalidGraph, "self edge " + fragment);
    }
    auto key = std::minmax(edge.source, edge.target);
    auto [slot, fresh] =
        pairs.emplace(std::make_tuple(key.first, key.second, is_depth(edge.relation)), edge.source);
    if (!fresh) {
      if (is_depth(edge.relation) && slot->second != edge.source) {
        throw Error(ErrorCode::CyclicDepth, edge.source + " and " + edge.target);
      }
      throw Error(ErrorCode::InvalidGraph,
                  std::string(is_depth(edge.relation) ? "second depth" : "second positional") +
                      " relation between the same pair " + fragment);
    }
  }

  derive_depths(*this);
}

std::optional<std::size_t> SceneGraph::index_of(const std::string& id) const {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].id == id) return i;
  }
  return std::nullopt;
}

const SceneNode* SceneGraph::find(const std::string& id) const {
  auto idx = index_of(id);
  return idx ? &nodes_[*idx] : nullptr;
}

bool same_graph(const SceneGraph& a, const SceneGraph& b) {
  auto node_key = [](const SceneNode& n) {
    return std::make_tuple(n.id, n.species, n.attributes);
  };
  auto edge_key = [](const SceneEdge& e) {
    return std::make_tuple(e.source, static_cast<int>(e.relation), e.target);
  };
  std::multiset<decltype(node_key(SceneNode{}))> na, nb;
  for (const auto& n : a.nodes()) na.insert(node_key(n));
  for (const auto& n : b.nodes()) nb.insert(node_key(n));
  std::multiset<decltype(edge_key(SceneEdge{}))> ea, eb;
  for (const auto& e : a.edges()) ea.insert(edge_key(e));
  for (const auto& e : b.edges()) eb.insert(edge_key(e));
  return na == nb && ea == eb;
}

}  // namespace landsketch
