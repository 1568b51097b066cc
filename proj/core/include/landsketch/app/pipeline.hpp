#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "landsketch/app/config.hpp"
#include "landsketch/app/store.hpp"
#include "landsketch/concretize/llm_client.hpp"
#include "landsketch/evaluate/benchmark.hpp"
#include "landsketch/illustrate/backend.hpp"

namespace landsketch::app {

struct ConcretizeInput {
  /// Description to concretize; the session description when absent.
  std::optional<std::string> text;
  /// Edited graph in JSON form; skips the graph generator.
  std::optional<nlohmann::json> graph;
  std::uint64_t seed = 0;
};

struct RenderInput {
  /// Layout JSON replacing the latest layout for this render.
  std::optional<nlohmann::json> layout;
  illustrate::StyleParams style;
  std::uint64_t seed = 0;
};

/// Outcome of re-running one stored record.
struct ReplayStep {
  int index = 0;
  IterationKind kind = IterationKind::Concretize;
  bool reproduced = false;
  std::string detail;
};

struct ReplayReport {
  std::string session_id;
  /// Log replay reconstructs the session loaded from disk.
  bool state_identical = false;
  std::vector<ReplayStep> steps;

  bool ok() const;
};

nlohmann::json replay_report_to_json(const ReplayReport& report);

/// The iterative design loop over persisted sessions. Steps on one session
/// are serialized; different sessions proceed concurrently.
class Studio {
 public:
  /// Transport and backend default to the ones described by `config`.
  explicit Studio(AppConfig config, std::shared_ptr<concretize::ChatTransport> transport = nullptr,
                  std::shared_ptr<illustrate::RenderBackend> backend = nullptr);

  const AppConfig& config() const noexcept { return config_; }
  const PlantKnowledgeBase& kb() const noexcept { return kb_; }
  SessionStore& store() noexcept { return store_; }
  concretize::ChatTransport& transport() noexcept { return *transport_; }

  std::string create_session(const std::string& description);
  DesignSession session(const std::string& id) const;

  /// Text (or edited graph) to graph and layout. Input validation errors
  /// append nothing; generator failures append a record carrying the error
  /// and are rethrown. With fallback_oracle set, a failed layout generation
  /// is replaced by the rule-based solver.
  IterationRecord step_concretize(const std::string& id, const ConcretizeInput& input);

  /// Renders the latest layout (or the override). Throws
  /// Error(Precondition) when the session has no layout yet. Backend
  /// failures append a record carrying the error and are rethrown.
  IterationRecord step_render(const std::string& id, const RenderInput& input);

  /// Rebuilds the session from its log and re-runs every record from its
  /// stored transcripts, seeds and styles, comparing the outputs.
  ReplayReport replay_session(const std::string& id);

 private:
  AppConfig config_;
  PlantKnowledgeBase kb_;
  SessionStore store_;
  std::shared_ptr<concretize::ChatTransport> transport_;
  std::shared_ptr<illustrate::RenderBackend> backend_;
};

/// Benchmark with a named generator: "oracle" (the rule-based solver) or
/// "llm" (layout generation through `transport`). Throws
/// Error(InvalidArgument) for other names or a null transport with "llm".
evaluate::BenchmarkReport run_named_benchmark(const std::string& generator, std::uint64_t seed,
                                              int sample_count, const AppConfig& config,
                                              const PlantKnowledgeBase& kb,
                                              concretize::ChatTransport* transport,
                                              std::function<void(int, int)> progress = {});

}  // namespace landsketch::app
