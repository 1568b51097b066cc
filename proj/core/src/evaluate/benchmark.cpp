#include "landsketch/evaluate/benchmark.hpp"

#include <cstdio>

#include "landsketch/error.hpp"
#include "landsketch/model/text_format.hpp"
#include "landsketch/solve/layout_solver.hpp"

namespace landsketch::evaluate {

BenchmarkReport run_benchmark(const LayoutGenerator& generator, const MetricConfig& cfg,
                              const PlantKnowledgeBase& kb, std::uint64_t seed,
                              const BenchmarkOptions& options) {
  cfg.validate();
  BenchmarkReport report;
  report.generator = options.generator_name;
  report.seed = seed;
  report.sample_count = cfg.sample_count;
  for (int i = 0; i < cfg.sample_count; ++i) {
    SampleRecord record;
    record.index = i;
    record.seed = mix_seed(seed, static_cast<std::uint64_t>(i));
    try {
      SceneSample scene = random_scene(record.seed, kb, options.nodes);
      record.description = scene.description;
      record.graph = linearize_graph(scene.graph);
      const Layout gt = solve::solve(scene.graph, kb, options.canvas);
      const Layout gen = generator(scene.graph);
      record.aspect_ratio = metric_aspect_ratio(gen, gt, cfg).pass;
      record.relative_areas = metric_relative_areas(gen, gt, cfg).pass;
      record.relative_positions = metric_relative_positions(gen, scene.graph).pass;
      record.scaling_rule = metric_perspective(gen, scene.graph, kb).pass;
    } catch (const std::exception& e) {
      record.aspect_ratio = record.relative_areas = false;
      record.relative_positions = record.scaling_rule = false;
      record.error = e.what();
    }
    report.aspect_ratio += record.aspect_ratio;
    report.relative_areas += record.relative_areas;
    report.relative_positions += record.relative_positions;
    report.scaling_rule += record.scaling_rule;
    report.details.push_back(std::move(record));
    if (options.progress) options.progress(i + 1, cfg.sample_count);
  }
  return report;
}

nlohmann::json report_to_json(const BenchmarkReport& report) {
  nlohmann::json details = nlohmann::json::array();
  for (const auto& r : report.details) {
    details.push_back({{"index", r.index},
                       {"seed", r.seed},
                       {"description", r.description},
                       {"graph", r.graph},
                       {"aspect_ratio", r.aspect_ratio},
                       {"relative_areas", r.relative_areas},
                       {"relative_positions", r.relative_positions},
                       {"scaling_rule", r.scaling_rule},
                       {"error", r.error ? nlohmann::json(*r.error) : nlohmann::json(nullptr)}});
  }
  return {{"generator", report.generator},
          {"seed", report.seed},
          {"sample_count", report.sample_count},
          {"aspect_ratio", report.aspect_ratio},
          {"relative_areas", report.relative_areas},
          {"relative_positions", report.relative_positions},
          {"scaling_rule", report.scaling_rule},
          {"details", details}};
}

std::string report_table(const BenchmarkReport& report) {
  char line[256];
  std::string out;
  std::snprintf(line, sizeof line, "%-24s %14s %14s %14s %14s\n", "Method", "Aspect ratio",
                "Relative areas", "Rel. positions", "Scaling rule");
  out += line;
  std::snprintf(line, sizeof line, "%-24s %14d %14d %14d %14d\n", report.generator.c_str(),
                report.aspect_ratio, report.relative_areas, report.relative_positions,
                report.scaling_rule);
  out += line;
  std::snprintf(line, sizeof line, "(%d samples, seed %llu)\n", report.sample_count,
                static_cast<unsigned long long>(report.seed));
  out += line;
  return out;
}

}  // namespace landsketch::evaluate
