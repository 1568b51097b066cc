#pragma once

#include <map>
#include <string>
#include <vector>

#include "landsketch/model/graph.hpp"
#include "landsketch/model/knowledge.hpp"
#include "landsketch/model/layout.hpp"

namespace landsketch::evaluate {

struct MetricConfig {
  /// L1 threshold on per-plant aspect ratio error.
  double theta_aspect = 0.05;
  /// Relative-error threshold on pairwise area ratios.
  double theta_area = 0.05;
  int sample_count = 100;

  /// Throws Error(InvalidArgument) unless both thresholds are positive and
  /// sample_count is non-negative.
  void validate() const;
};

struct MetricResult {
  bool pass = true;
  /// Human-readable reason per failing plant or pair.
  std::vector<std::string> failures;

  explicit operator bool() const noexcept { return pass; }
};

struct AspectRatioResult : MetricResult {
  /// |AR_gt - AR_gen| per plant.
  std::map<std::string, double> errors;
};

/// Pass iff every plant's |AR_gt - AR_gen| < theta_aspect (AR = w / h).
/// Throws Error(NameMismatch) unless both layouts hold the same names.
AspectRatioResult metric_aspect_ratio(const Layout& gen, const Layout& gt,
                                      const MetricConfig& cfg = {});

/// Pass iff for every unordered pair the generated area ratio is within
/// theta_area relative error of the ground-truth ratio.
MetricResult metric_relative_areas(const Layout& gen, const Layout& gt,
                                   const MetricConfig& cfg = {});

/// Exactly one relation per unordered element pair, (earlier, kind, later)
/// in element order.
struct RelationSet {
  std::vector<SceneEdge> triples;

  /// True when the edge or its inverse restatement is present.
  bool contains(const SceneEdge& edge) const;
};

RelationSet extract_relations(const Layout& layout);

/// Pass iff every graph edge appears in extract_relations(gen). Throws
/// Error(NameMismatch) unless element names equal the node ids.
MetricResult metric_relative_positions(const Layout& gen, const SceneGraph& graph);

struct PairPerspective {
  std::string a;
  std::string b;
  double sr_gt = 1.0;
  double sr_gen = 1.0;
  /// Relation of a to b as stated by the graph.
  RelationKind z_relation = RelationKind::Behind;
  bool pass = false;
};

struct PerspectiveResult : MetricResult {
  std::vector<PairPerspective> pairs;
};

/// For every depth edge (a behind b): SR_gt from kb canonical areas at depth
/// 0, SR_gen from generated box areas; a in front of b requires
/// SR_gt < SR_gen, a behind b requires SR_gt > SR_gen. Throws
/// Error(UnknownSpecies) and Error(NameMismatch).
PerspectiveResult metric_perspective(const Layout& gen, const SceneGraph& graph,
                                     const PlantKnowledgeBase& kb);

}  // namespace landsketch::evaluate
