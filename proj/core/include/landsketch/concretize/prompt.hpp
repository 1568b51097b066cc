#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "landsketch/model/graph.hpp"
#include "landsketch/model/knowledge.hpp"
#include "landsketch/model/layout.hpp"

namespace landsketch::concretize {

struct Demonstration {
  std::string question;
  std::string answer;

  bool operator==(const Demonstration&) const = default;
};

/// A rendered prompt is prefix, task, steps, constraints, context,
/// demonstrations and finally the query, in that order.
struct PromptBundle {
  std::string prefix;
  std::string task_description;
  std::vector<std::string> cot_steps;
  std::vector<std::string> constraints;
  std::vector<std::string> context;
  std::vector<Demonstration> demonstrations;
  std::string query;

  bool operator==(const PromptBundle&) const = default;
};

struct PromptOptions {
  /// Off reproduces the "without domain knowledge" condition.
  bool include_context = true;
  int max_nodes = 6;
};

PromptBundle build_graph_prompt(const std::string& description, const PlantKnowledgeBase& kb,
                                const std::vector<Demonstration>& demos,
                                const PromptOptions& options = {});

PromptBundle build_layout_prompt(const SceneGraph& graph, const PlantKnowledgeBase& kb,
                                 Canvas canvas, const std::vector<Demonstration>& demos,
                                 const PromptOptions& options = {});

/// Everything after the prefix, as sent in the user message.
std::string render_body(const PromptBundle& bundle);
/// prefix + body.
std::string render_text(const PromptBundle& bundle);

/// [{role: system, content: prefix}, {role: user, content: body}]
nlohmann::json to_messages(const PromptBundle& bundle);

nlohmann::json bundle_to_json(const PromptBundle& bundle);

/// The five shipped scene graphs behind the demonstrations. Species not in
/// `kb` are replaced by sampled scenes so demos always match the kb.
std::vector<SceneGraph> demo_graphs(const PlantKnowledgeBase& kb);

/// description -> triples, for the graph generator.
std::vector<Demonstration> default_graph_demos(const PlantKnowledgeBase& kb);

/// triples -> worked layout from the rule-based solver, for the layout
/// generator.
std::vector<Demonstration> default_layout_demos(const PlantKnowledgeBase& kb, Canvas canvas);

/// Worked answer for one graph: depths, sizes, then tuples. Used by the
/// demonstrations.
std::string worked_layout_answer(const SceneGraph& graph, const PlantKnowledgeBase& kb,
                                 Canvas canvas);

}  // namespace landsketch::concretize
