#pragma once

// Hand-rolled generators for property-style tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "landsketch/model/graph.hpp"
#include "landsketch/model/layout.hpp"

namespace landsketch::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int between(int lo, int hi) { return lo + static_cast<int>(rng_() % (hi - lo + 1)); }
  bool coin(double p = 0.5) { return (rng_() >> 11) * 0x1.0p-53 < p; }
  std::uint64_t bits() { return rng_(); }

  std::string word(int min_len = 1, int max_len = 8) {
    static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
    std::string s;
    const int n = between(min_len, max_len);
    for (int i = 0; i < n; ++i) s += alphabet[rng_() % alphabet.size()];
    return s;
  }

  std::string bytes(int max_len) {
    std::string s;
    const int n = between(0, max_len);
    for (int i = 0; i < n; ++i) s += static_cast<char>(rng_() & 0xff);
    return s;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Random valid graph. Depth edges always point from a later node to an
/// earlier one (Behind) or the reverse (InFrontOf), so the depth subgraph
/// is acyclic. Some nodes get attributes or a species unrelated to the id.
inline SceneGraph random_graph(Gen& g, int max_nodes = 6) {
  const int n = g.between(0, max_nodes);
  std::vector<SceneNode> nodes;
  for (int i = 0; i < n; ++i) {
    SceneNode node;
    node.id = g.word(2, 6) + "_" + std::to_string(i);
    node.species = g.coin(0.7) ? node.id.substr(0, node.id.find('_')) : g.word(3, 7);
    if (g.coin(0.3)) {
      const int attrs = g.between(1, 2);
      for (int k = 0; k < attrs; ++k) node.attributes.push_back(g.word() + " " + g.word());
    }
    nodes.push_back(std::move(node));
  }
  std::vector<SceneEdge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < i; ++j) {
      if (!g.coin(0.4)) continue;
      const auto kind = kAllRelations[g.between(0, 5)];
      if (kind == RelationKind::Behind) {
        edges.push_back({nodes[i].id, kind, nodes[j].id});
      } else if (kind == RelationKind::InFrontOf) {
        edges.push_back({nodes[j].id, kind, nodes[i].id});
      } else if (g.coin()) {
        edges.push_back({nodes[i].id, kind, nodes[j].id});
      } else {
        edges.push_back({nodes[j].id, kind, nodes[i].id});
      }
    }
  }
  std::shuffle(edges.begin(), edges.end(), g.engine());
  return SceneGraph(std::move(nodes), std::move(edges));
}

inline Layout random_layout(Gen& g, Canvas canvas, int n) {
  std::vector<int> z(n);
  for (int i = 0; i < n; ++i) z[i] = i;
  std::shuffle(z.begin(), z.end(), g.engine());
  std::vector<PlacedElement> elements;
  for (int i = 0; i < n; ++i) {
    PlacedElement e;
    e.name = g.word(2, 7) + "_" + std::to_string(i);
    e.width = g.between(1, canvas.width);
    e.height = g.between(1, canvas.height);
    e.x = g.between(0, canvas.width - e.width);
    e.y = g.between(0, canvas.height - e.height);
    e.z = z[i];
    elements.push_back(e);
  }
  return Layout(canvas, std::move(elements));
}

}  // namespace landsketch::testing
