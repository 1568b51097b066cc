#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "landsketch/concretize/llm_client.hpp"
#include "landsketch/concretize/prompt.hpp"
#include "landsketch/model/graph.hpp"
#include "landsketch/model/layout.hpp"

namespace landsketch::concretize {

struct GeneratorOptions {
  PromptOptions prompt;
  /// Defaults to the shipped five when unset.
  std::optional<std::vector<Demonstration>> demos;
};

/// One request/response pair per attempt.
struct Transcript {
  nlohmann::json prompt;     // bundle_to_json of the first attempt's bundle
  nlohmann::json exchanges;  // [{request, response}]
};

struct GraphGeneration {
  SceneGraph graph;
  Transcript transcript;
};

struct LayoutGeneration {
  Layout layout;
  Transcript transcript;
};

/// Text reply that is sent after a malformed first answer.
extern const char* const kGraphFormatReminder;
extern const char* const kLayoutFormatReminder;

/// Builds the graph prompt, sends it and parses the reply with
/// parse_triples. A reply without any triple or node, or with a malformed
/// triple, is retried once with a format reminder; the second failure is
/// ParseFailedAfterRetry carrying the raw text. Validation errors of the
/// retried reply (UnknownRelation, CyclicDepth, InvalidGraph) propagate.
GraphGeneration generate_scene_graph(const std::string& description,
                                     const LlmEndpointConfig& config, ChatTransport& transport,
                                     const PlantKnowledgeBase& kb,
                                     const GeneratorOptions& options = {});

/// As generate_scene_graph with parse_layout. The layout must name every
/// graph node exactly once (NameMismatch otherwise).
LayoutGeneration generate_layout(const SceneGraph& graph, const LlmEndpointConfig& config,
                                 ChatTransport& transport, const PlantKnowledgeBase& kb,
                                 Canvas canvas = {}, const GeneratorOptions& options = {});

nlohmann::json transcript_to_json(const Transcript& transcript);

}  // namespace landsketch::concretize
