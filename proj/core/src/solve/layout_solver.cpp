#include "landsketch/solve/layout_solver.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "landsketch/error.hpp"
#include "landsketch/model/depth.hpp"
#include "landsketch/model/text_format.hpp"

namespace landsketch::solve {
namespace {

struct VBox {
  double cx = 0, cy = 0, w = 0, h = 0;
};

// Relation of node i towards node j, if any edge connects them.
using RelationMatrix = std::vector<std::vector<std::optional<RelationKind>>>;

RelationMatrix relation_matrix(const SceneGraph& graph) {
  const std::size_t n = graph.size();
  RelationMatrix m(n, std::vector<std::optional<RelationKind>>(n));
  for (const auto& e : graph.edges()) {
    auto s = *graph.index_of(e.source);
    auto t = *graph.index_of(e.target);
    m[s][t] = e.relation;
    m[t][s] = inverse(e.relation);
  }
  return m;
}

// Longest-path rank along one axis; `before(i, j)` means i must precede j.
// Returns nullopt on a cycle.
template <typename Before>
std::optional<std::vector<int>> axis_ranks(std::size_t n, Before before) {
  std::vector<int> indegree(n, 0), rank(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (before(i, j)) ++indegree[j];
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::size_t visited = 0;
  while (!ready.empty()) {
    std::size_t i = ready.front();
    ready.erase(ready.begin());
    ++visited;
    for (std::size_t j = 0; j < n; ++j) {
      if (!before(i, j)) continue;
      rank[j] = std::max(rank[j], rank[i] + 1);
      if (--indegree[j] == 0) ready.push_back(j);
    }
  }
  if (visited != n) return std::nullopt;
  return rank;
}

double overlap_area(const VBox& a, const VBox& b) {
  const double ox = std::min({(a.w + b.w) / 2 - std::abs(a.cx - b.cx), a.w, b.w});
  const double oy = std::min({(a.h + b.h) / 2 - std::abs(a.cy - b.cy), a.h, b.h});
  return (ox > 0 && oy > 0) ? ox * oy : 0.0;
}

bool separated(const VBox& a, const VBox& b, double gap) {
  return std::abs(a.cx - b.cx) - (a.w + b.w) / 2 >= gap ||
         std::abs(a.cy - b.cy) - (a.h + b.h) / 2 >= gap;
}

// Does candidate box k satisfy its relation towards placed box j?
bool satisfies(const VBox& k, const VBox& j, std::optional<RelationKind> rel, double margin,
               double min_overlap) {
  const double dx = k.cx - j.cx;
  const double dy = k.cy - j.cy;
  if (!rel) return separated(k, j, margin);
  switch (*rel) {
    case RelationKind::Left:
      return -dx >= std::abs(dy) + margin && separated(k, j, margin);
    case RelationKind::Right:
      return dx >= std::abs(dy) + margin && separated(k, j, margin);
    case RelationKind::Top:
      return -dy >= std::abs(dx) + margin && separated(k, j, margin);
    case RelationKind::Bottom:
      return dy >= std::abs(dx) + margin && separated(k, j, margin);
    case RelationKind::Behind:
    case RelationKind::InFrontOf:
      return overlap_area(k, j) >= min_overlap * std::min(k.w * k.h, j.w * j.h);
  }
  return false;
}

// Where node k would ideally sit next to placed node j. Depth partners
// straddle one side of each other (`side` 0..3: left, right, above, below)
// so that about a third of the smaller extent overlaps, leaving the other
// sides free for further partners.
std::pair<double, double> ideal_offset(const VBox& k, const VBox& j, RelationKind rel,
                                       double gap, int side) {
  switch (rel) {
    case RelationKind::Left: return {j.cx - (j.w + k.w) / 2 - gap, j.cy};
    case RelationKind::Right: return {j.cx + (j.w + k.w) / 2 + gap, j.cy};
    case RelationKind::Top: return {j.cx, j.cy - (j.h + k.h) / 2 - gap};
    case RelationKind::Bottom: return {j.cx, j.cy + (j.h + k.h) / 2 + gap};
    case RelationKind::Behind:
    case RelationKind::InFrontOf: break;
  }
  const double sx = (j.w + k.w) / 2 - 0.35 * std::min(j.w, k.w);
  const double sy = (j.h + k.h) / 2 - 0.35 * std::min(j.h, k.h);
  switch (side) {
    case 0: return {j.cx - sx, j.cy};
    case 1: return {j.cx + sx, j.cy};
    // Farther plants sit higher in the picture, nearer ones lower.
    case 2: return {j.cx, rel == RelationKind::Behind ? j.cy - sy : j.cy + sy};
    default: return {j.cx, rel == RelationKind::Behind ? j.cy + sy : j.cy - sy};
  }
}

struct Attempt {
  std::vector<VBox> boxes;
  bool ok = false;
};

Attempt place_greedy(const std::vector<VBox>& sized, const RelationMatrix& rel,
                     const std::vector<int>& xrank, const std::vector<int>& yrank,
                     double margin, double min_overlap, int round) {
  const std::size_t n = sized.size();
  Attempt attempt;
  attempt.boxes = sized;
  double unit = 0, min_dim = 1e300, extent = 0;
  for (const auto& b : sized) {
    unit += std::max(b.w, b.h);
    min_dim = std::min({min_dim, b.w, b.h});
    extent += b.w + b.h + 4 * margin;
  }
  unit = 1.1 * unit / static_cast<double>(std::max<std::size_t>(n, 1));
  const double step = std::max(0.25, min_dim / 4);
  const long long radius = static_cast<long long>(std::ceil(extent / step)) + 1;

  for (std::size_t k = 0; k < n; ++k) {
    VBox& box = attempt.boxes[k];
    double px = 0, py = 0;
    int anchors = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (!rel[k][j]) continue;
      const int side = static_cast<int>((k + static_cast<std::size_t>(round)) % 4);
      auto [x, y] = ideal_offset(box, attempt.boxes[j], *rel[k][j], margin, side);
      px += x;
      py += y;
      ++anchors;
    }
    if (anchors) {
      px /= anchors;
      py /= anchors;
    } else {
      px = xrank[k] * unit;
      py = yrank[k] * unit;
    }
    int direction = 0;
    if (round > 0) {
      std::mt19937_64 rng(0x9e3779b97f4a7c15ULL * static_cast<unsigned long long>(round) +
                          static_cast<unsigned long long>(k));
      std::uniform_real_distribution<double> jitter(-unit, unit);
      px += jitter(rng);
      py += jitter(rng);
      direction = static_cast<int>(rng() % 4);
    }

    auto valid = [&](double cx, double cy) {
      box.cx = cx;
      box.cy = cy;
      for (std::size_t j = 0; j < k; ++j) {
        if (!satisfies(box, attempt.boxes[j], rel[k][j], margin, min_overlap)) return false;
      }
      return true;
    };

    bool placed = valid(px, py);
    // Square rings of growing radius around the preferred point; the start
    // side of each ring rotates with the jitter direction.
    for (long long r = 1; !placed && r <= radius; ++r) {
      for (int side = 0; side < 4 && !placed; ++side) {
        const int s = (side + direction) % 4;
        for (long long t = -r; t < r && !placed; ++t) {
          long long i = 0, j = 0;
          switch (s) {
            case 0: i = t; j = -r; break;
            case 1: i = r; j = t; break;
            case 2: i = -t; j = r; break;
            default: i = -r; j = -t; break;
          }
          placed = valid(px + i * step, py + j * step);
        }
      }
    }
    if (!placed) return attempt;
  }
  attempt.ok = true;
  return attempt;
}

struct Fitted {
  std::vector<PlacedElement> elements;
  double scale = 1.0;
};

Fitted fit_to_canvas(const SceneGraph& graph, const std::vector<VBox>& boxes,
                     const std::vector<int>& z, Canvas canvas) {
  Fitted fitted;
  if (boxes.empty()) return fitted;
  double minx = 1e300, miny = 1e300, maxx = -1e300, maxy = -1e300;
  for (const auto& b : boxes) {
    minx = std::min(minx, b.cx - b.w / 2);
    maxx = std::max(maxx, b.cx + b.w / 2);
    miny = std::min(miny, b.cy - b.h / 2);
    maxy = std::max(maxy, b.cy + b.h / 2);
  }
  const double s = std::min({1.0, canvas.width / (maxx - minx), canvas.height / (maxy - miny)});
  const double ox = canvas.width / 2.0 - s * (minx + maxx) / 2;
  const double oy = canvas.height / 2.0 - s * (miny + maxy) / 2;
  fitted.scale = s;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    const auto& b = boxes[i];
    const int w = std::clamp(static_cast<int>(std::lround(b.w * s)), 1, canvas.width);
    const int h = std::clamp(static_cast<int>(std::lround(b.h * s)), 1, canvas.height);
    int x = static_cast<int>(std::lround(ox + s * b.cx - w / 2.0));
    int y = static_cast<int>(std::lround(oy + s * b.cy - h / 2.0));
    x = std::clamp(x, 0, canvas.width - w);
    y = std::clamp(y, 0, canvas.height - h);
    fitted.elements.push_back({graph.nodes()[i].id, x, y, w, h, z[i]});
  }
  return fitted;
}

}  // namespace

SizeMap assign_sizes(const SceneGraph& graph, const PlantKnowledgeBase& kb) {
  const auto depths = derive_depth_vector(graph);
  SizeMap sizes;
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto& node = graph.nodes()[i];
    const PlantSpec& spec = kb.at(node.species);
    const double height = spec.canonical_height * std::pow(kb.depth_scale(), depths[i]);
    const double width = height * spec.aspect_ratio;
    sizes[node.id] = {std::max(1, static_cast<int>(std::lround(width))),
                      std::max(1, static_cast<int>(std::lround(height)))};
  }
  return sizes;
}

std::string check_constraints(const SceneGraph& graph, const Layout& layout,
                              double min_depth_overlap) {
  const std::size_t n = graph.size();
  if (layout.size() != n) return "element count differs from node count";
  std::vector<const PlacedElement*> el(n);
  for (std::size_t i = 0; i < n; ++i) {
    el[i] = layout.find(graph.nodes()[i].id);
    if (!el[i]) return "missing element " + graph.nodes()[i].id;
  }
  const auto z = depth_ranks_to_z(derive_depth_vector(graph));
  for (std::size_t i = 0; i < n; ++i) {
    if (el[i]->z != z[i]) return "z of " + el[i]->name + " does not follow depth";
  }
  std::set<std::pair<std::string, std::string>> related;
  for (const auto& e : graph.edges()) {
    const auto& a = *layout.find(e.source);
    const auto& b = *layout.find(e.target);
    related.insert(std::minmax(e.source, e.target));
    if (relation_of(a, b) != e.relation) {
      return a.name + " is not " + std::string(to_string(e.relation)) + " " + b.name;
    }
    const long long inter = intersection_area(a.box(), b.box());
    if (is_depth(e.relation) &&
        static_cast<double>(inter) <
            min_depth_overlap * static_cast<double>(std::min(a.box().area(), b.box().area()))) {
      return a.name + " and " + b.name + " overlap too little";
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (related.count(std::minmax(el[i]->name, el[j]->name))) continue;
      if (intersection_area(el[i]->box(), el[j]->box()) > 0) {
        return el[i]->name + " and " + el[j]->name + " overlap without a relation";
      }
    }
  }
  return {};
}

Layout assign_positions(const SceneGraph& graph, const SizeMap& sizes, Canvas canvas,
                        const SolverOptions& options) {
  validate_canvas(canvas);
  const std::size_t n = graph.size();
  if (n == 0) return Layout(canvas, {});

  std::vector<VBox> sized(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = sizes.find(graph.nodes()[i].id);
    if (it == sizes.end() || it->second.width <= 0 || it->second.height <= 0) {
      throw Error(ErrorCode::InvalidArgument, "no size for node " + graph.nodes()[i].id);
    }
    sized[i].w = it->second.width;
    sized[i].h = it->second.height;
  }

  {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& e : graph.edges()) {
      if (!seen.insert(std::minmax(e.source, e.target)).second) {
        throw Error(ErrorCode::Unsatisfiable, "pair " + e.source + "/" + e.target +
                                                  " has both a positional and a depth relation");
      }
    }
  }
  const auto rel = relation_matrix(graph);
  auto xrank = axis_ranks(n, [&](std::size_t i, std::size_t j) {
    return rel[i][j] == RelationKind::Left;
  });
  auto yrank = axis_ranks(n, [&](std::size_t i, std::size_t j) {
    return rel[i][j] == RelationKind::Top;
  });
  if (!xrank || !yrank) {
    throw Error(ErrorCode::Unsatisfiable, "cyclic positional relations: " + linearize_graph(graph));
  }
  const auto z = depth_ranks_to_z(derive_depth_vector(graph));
  // Aim above the required overlap so rounding cannot drop below it.
  const double target_overlap = options.min_depth_overlap * 1.2;

  for (int round = 0; round <= options.jitter_rounds; ++round) {
    // The margin is specified in canvas pixels; refine it as the fit scale
    // becomes known.
    double scale = 1.0;
    for (int pass = 0; pass < 3; ++pass) {
      const double margin = options.margin_px / scale;
      Attempt attempt = place_greedy(sized, rel, *xrank, *yrank, margin, target_overlap, round);
      if (!attempt.ok) break;
      Fitted fitted = fit_to_canvas(graph, attempt.boxes, z, canvas);
      Layout layout(canvas, std::move(fitted.elements));
      if (check_constraints(graph, layout, options.min_depth_overlap).empty()) return layout;
      if (std::abs(fitted.scale - scale) < 1e-9) break;
      scale = fitted.scale;
    }
  }
  throw Error(ErrorCode::Unsatisfiable, linearize_graph(graph));
}

Layout solve(const SceneGraph& graph, const PlantKnowledgeBase& kb, Canvas canvas,
             const SolverOptions& options) {
  return assign_positions(graph, assign_sizes(graph, kb), canvas, options);
}

}  // namespace landsketch::solve
