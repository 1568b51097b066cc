#pragma once

#include <map>
#include <string>

#include "landsketch/model/graph.hpp"
#include "landsketch/model/knowledge.hpp"
#include "landsketch/model/layout.hpp"

namespace landsketch::solve {

struct Size {
  int width = 0;
  int height = 0;

  bool operator==(const Size&) const = default;
};

using SizeMap = std::map<std::string, Size>;

/// height = canonical_height * depth_scale^depth, width = height *
/// aspect_ratio, both rounded to whole pixels (at least 1). Throws
/// Error(UnknownSpecies).
SizeMap assign_sizes(const SceneGraph& graph, const PlantKnowledgeBase& kb);

struct SolverOptions {
  /// Jitter rounds tried after the plain greedy pass fails.
  int jitter_rounds = 50;
  /// Minimum overlap of a depth-related pair, as a fraction of the smaller
  /// box's area.
  double min_depth_overlap = 0.10;
  /// Clearance, in final canvas pixels, kept between disjoint boxes and on
  /// the dominant-axis test so rounding cannot flip a relation.
  double margin_px = 2.0;
};

/// Greedy placement in node order, then a uniform shrink-and-centre onto the
/// canvas. Positional edges hold on box centers with a dominant-axis offset,
/// depth-related pairs overlap by at least min_depth_overlap, every other
/// pair is disjoint, and z follows derive_depths. Throws
/// Error(Unsatisfiable) when no round succeeds.
Layout assign_positions(const SceneGraph& graph, const SizeMap& sizes, Canvas canvas,
                        const SolverOptions& options = {});

/// assign_positions(graph, assign_sizes(graph, kb), canvas).
Layout solve(const SceneGraph& graph, const PlantKnowledgeBase& kb, Canvas canvas = {},
             const SolverOptions& options = {});

/// Checks a layout against every constraint assign_positions promises.
/// Returns an empty string when satisfied, otherwise a description of the
/// first violation.
std::string check_constraints(const SceneGraph& graph, const Layout& layout,
                              double min_depth_overlap = 0.10);

}  // namespace landsketch::solve
