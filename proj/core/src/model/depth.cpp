#include "landsketch/model/depth.hpp"

#include <algorithm>
#include <numeric>

#include "landsketch/error.hpp"

namespace landsketch {

std::vector<int> derive_depth_vector(const SceneGraph& graph) {
  const auto& nodes = graph.nodes();
  const std::size_t n = nodes.size();
  // behind[a] lists b for every (a Behind b).
  std::vector<std::vector<std::size_t>> behind(n);
  for (const auto& edge : graph.edges()) {
    if (!is_depth(edge.relation)) continue;
    auto s = graph.index_of(edge.source);
    auto t = graph.index_of(edge.target);
    if (!s || !t) continue;
    if (edge.relation == RelationKind::Behind) {
      behind[*s].push_back(*t);
    } else {
      behind[*t].push_back(*s);
    }
  }

  enum class Mark { Unseen, Active, Done };
  std::vector<Mark> mark(n, Mark::Unseen);
  std::vector<int> depth(n, 0);
  // Iterative post-order DFS; an Active node reached again closes a cycle.
  for (std::size_t root = 0; root < n; ++root) {
    if (mark[root] != Mark::Unseen) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    mark[root] = Mark::Active;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < behind[node].size()) {
        std::size_t child = behind[node][next++];
        if (mark[child] == Mark::Active) {
          throw Error(ErrorCode::CyclicDepth, nodes[child].id);
        }
        if (mark[child] == Mark::Unseen) {
          mark[child] = Mark::Active;
          stack.emplace_back(child, 0);
        }
        continue;
      }
      int d = 0;
      for (std::size_t child : behind[node]) d = std::max(d, depth[child] + 1);
      depth[node] = d;
      mark[node] = Mark::Done;
      stack.pop_back();
    }
  }
  return depth;
}

std::map<std::string, int> derive_depths(const SceneGraph& graph) {
  auto depth = derive_depth_vector(graph);
  std::map<std::string, int> out;
  for (std::size_t i = 0; i < depth.size(); ++i) {
    out[graph.nodes()[i].id] = depth[i];
  }
  return out;
}

std::vector<int> depth_ranks_to_z(const std::vector<int>& depths) {
  std::vector<std::size_t> order(depths.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return depths[a] < depths[b]; });
  std::vector<int> z(depths.size());
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    z[order[rank]] = static_cast<int>(rank);
  }
  return z;
}

}  // namespace landsketch
