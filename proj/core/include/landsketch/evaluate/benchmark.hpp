#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "landsketch/evaluate/metrics.hpp"
#include "landsketch/evaluate/scene_sampler.hpp"
#include "landsketch/model/layout.hpp"

namespace landsketch::evaluate {

using LayoutGenerator = std::function<Layout(const SceneGraph&)>;

struct SampleRecord {
  int index = 0;
  std::uint64_t seed = 0;
  std::string description;
  std::string graph;
  bool aspect_ratio = false;
  bool relative_areas = false;
  bool relative_positions = false;
  bool scaling_rule = false;
  std::optional<std::string> error;
};

/// Per-aspect success counts over sample_count scenes.
struct BenchmarkReport {
  std::string generator;
  std::uint64_t seed = 0;
  int sample_count = 0;
  int aspect_ratio = 0;
  int relative_areas = 0;
  int relative_positions = 0;
  int scaling_rule = 0;
  std::vector<SampleRecord> details;
};

struct BenchmarkOptions {
  Canvas canvas;
  NodeRange nodes;
  std::string generator_name = "custom";
  /// Called after each sample with (done, total).
  std::function<void(int, int)> progress;
};

/// Samples cfg.sample_count scenes, takes ground truth from the layout
/// solver and the candidate from `generator`, and counts per-aspect
/// successes. Generator or solver errors fail every aspect of that sample
/// and are kept in its detail record; the run continues.
BenchmarkReport run_benchmark(const LayoutGenerator& generator, const MetricConfig& cfg,
                              const PlantKnowledgeBase& kb, std::uint64_t seed,
                              const BenchmarkOptions& options = {});

nlohmann::json report_to_json(const BenchmarkReport& report);

/// Fixed-width table, columns in the order aspect ratio, relative areas,
/// relative positions, scaling rule.
std::string report_table(const BenchmarkReport& report);

}  // namespace landsketch::evaluate
