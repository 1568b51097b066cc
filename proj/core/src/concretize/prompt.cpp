#include "landsketch/concretize/prompt.hpp"

#include <cstdio>

#include "landsketch/evaluate/scene_sampler.hpp"
#include "landsketch/model/depth.hpp"
#include "landsketch/model/text_format.hpp"
#include "landsketch/solve/layout_solver.hpp"

namespace landsketch::concretize {
namespace {

std::string number(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

const char* kRelationWords = "left, right, top, bottom, behind, in front of";

std::vector<std::string> species_lines(const PlantKnowledgeBase& kb) {
  std::vector<std::string> lines;
  for (const auto& [name, spec] : kb.entries()) {
    lines.push_back(name + " (" + std::string(to_string(spec.category)) + "): aspect ratio " +
                    number(spec.aspect_ratio, 2) + ", front height " +
                    number(spec.canonical_height, 0) + " px");
  }
  return lines;
}

SceneGraph make_graph(std::vector<SceneNode> nodes, std::vector<SceneEdge> edges) {
  return SceneGraph(std::move(nodes), std::move(edges));
}

}  // namespace

PromptBundle build_graph_prompt(const std::string& description, const PlantKnowledgeBase& kb,
                                const std::vector<Demonstration>& demos,
                                const PromptOptions& options) {
  PromptBundle b;
  b.prefix =
      "You are an experienced landscape designer. You read scene descriptions and turn them "
      "into scene graphs of plants and their spatial relations.";
  b.task_description =
      "Input: a text description of a landscape scene.\n"
      "Output: a scene graph written as triples <a, relation, b>, one per line, where a and b "
      "are plant names and relation is one of: " +
      std::string(kRelationWords) +
      ".\n"
      "<a, bottom, b> means a is located below b in the picture; <a, behind, b> means a stands "
      "farther from the viewer than b.\n"
      "After the triples, write a line \"nodes:\" and list every plant that has no relation or "
      "has descriptive attributes as <name | attribute; attribute>.\n"
      "Name each plant after its species in lowercase; number repeated species as name_2, "
      "name_3.";
  b.cot_steps = {
      "List every plant mentioned in the description.",
      "Note the descriptive attributes of each plant, such as flower colour.",
      "For every spatial relation stated in the description, choose the matching relation "
      "word.",
      "Write the triples, then the nodes section.",
  };
  b.constraints = {
      "Use at most " + std::to_string(options.max_nodes) + " plants.",
      "Use only the six relation words.",
      "Only write relations that the description states.",
      "Give each pair of plants at most one of left, right, top, bottom and at most one of "
      "behind, in front of.",
  };
  if (options.include_context) {
    std::string known = "Known plant species:";
    for (const auto& s : kb.species()) known += " " + s + ",";
    known.back() = '.';
    b.context = {known, "Name each plant after the closest known species, in the singular, "
                        "and keep colour words as attributes."};
  }
  b.demonstrations = demos;
  b.query = description;
  return b;
}

PromptBundle build_layout_prompt(const SceneGraph& graph, const PlantKnowledgeBase& kb,
                                 Canvas canvas, const std::vector<Demonstration>& demos,
                                 const PromptOptions& options) {
  const std::string w = std::to_string(canvas.width), h = std::to_string(canvas.height);
  PromptBundle b;
  b.prefix =
      "You are an experienced landscape designer. You turn scene graphs into bounding-box "
      "layouts for a perspective landscape rendering.";
  b.task_description =
      "Input: a scene graph as triples <a, relation, b>, optionally followed by a \"nodes:\" "
      "section listing more plants.\n"
      "Output: one line per plant in the form [name, [x, y, width, height], z] on a " +
      w + "x" + h +
      " pixel canvas. (x, y) is the top-left corner of the box, the origin is the top-left "
      "corner of the canvas and y grows downward. z is the depth rank: 0 for the frontmost "
      "plant, larger for plants farther back.";
  b.cot_steps = {
      "Infer the depth of every plant from the behind and in front of relations; plants with "
      "no depth relation have depth 0.",
      "Assign each plant a size: height = front height x depth scale ^ depth, width = height x "
      "aspect ratio.",
      "Assign positions so that every relation holds between box centres, then shrink all "
      "boxes by one common factor if the scene does not fit the canvas.",
      "Emit one tuple per plant.",
  };
  b.constraints = {
      "Keep every box inside the " + w + "x" + h + " canvas.",
      "a is left of b when a's centre has the smaller x and the horizontal distance between "
      "the centres is at least the vertical distance; top and bottom work the same way "
      "vertically.",
      "Boxes of plants with a behind or in front of relation overlap by at least 10% of the "
      "smaller box; all other boxes do not overlap.",
      "Emit exactly one tuple for each plant of the graph, using the plant names.",
  };
  if (options.include_context) {
    b.context = {
        "Rule 1, aspect ratio: every plant keeps the width/height ratio of its species.",
        "Rule 2, relative sizes: plants at the same depth keep the height ratios of their "
        "species' front heights.",
        "Rule 3, perspective scaling: each depth level farther back multiplies width and "
        "height by " +
            number(kb.depth_scale(), 2) + ".",
    };
    for (auto& line : species_lines(kb)) b.context.push_back(std::move(line));
  }
  b.demonstrations = demos;
  b.query = linearize_graph(graph);
  return b;
}

std::string render_body(const PromptBundle& b) {
  std::string out = b.task_description + "\n";
  if (!b.cot_steps.empty()) {
    out += "\nThink step by step:\n";
    for (std::size_t i = 0; i < b.cot_steps.size(); ++i) {
      out += std::to_string(i + 1) + ". " + b.cot_steps[i] + "\n";
    }
  }
  if (!b.constraints.empty()) {
    out += "\nConstraints:\n";
    for (const auto& c : b.constraints) out += "- " + c + "\n";
  }
  if (!b.context.empty()) {
    out += "\nLandscape knowledge:\n";
    for (const auto& c : b.context) out += "- " + c + "\n";
  }
  for (std::size_t i = 0; i < b.demonstrations.size(); ++i) {
    out += "\nExample " + std::to_string(i + 1) + "\nQuestion:\n" + b.demonstrations[i].question +
           "\nAnswer:\n" + b.demonstrations[i].answer + "\n";
  }
  out += "\nQuestion:\n" + b.query + "\nAnswer:\n";
  return out;
}

std::string render_text(const PromptBundle& b) { return b.prefix + "\n\n" + render_body(b); }

nlohmann::json to_messages(const PromptBundle& b) {
  return nlohmann::json::array({{{"role", "system"}, {"content", b.prefix}},
                                {{"role", "user"}, {"content", render_body(b)}}});
}

nlohmann::json bundle_to_json(const PromptBundle& b) {
  nlohmann::json demos = nlohmann::json::array();
  for (const auto& d : b.demonstrations) {
    demos.push_back({{"question", d.question}, {"answer", d.answer}});
  }
  return {{"prefix", b.prefix},           {"task_description", b.task_description},
          {"cot_steps", b.cot_steps},     {"constraints", b.constraints},
          {"context", b.context},         {"demonstrations", demos},
          {"query", b.query}};
}

std::vector<SceneGraph> demo_graphs(const PlantKnowledgeBase& kb) {
  using R = RelationKind;
  std::vector<SceneGraph> graphs = {
      make_graph({{"maple", "maple", {}}, {"boxwood", "boxwood", {"a clipped round shape"}}},
                 {{"boxwood", R::InFrontOf, "maple"}}),
      make_graph({{"birch", "birch", {}},
                  {"lavender", "lavender", {"purple flowers"}},
                  {"peony", "peony", {"pink flowers"}}},
                 {{"lavender", R::Left, "peony"}, {"birch", R::Top, "lavender"}}),
      make_graph({{"pine", "pine", {}}, {"pine_2", "pine", {}}, {"juniper", "juniper", {}}},
                 {{"pine", R::Left, "pine_2"}, {"juniper", R::InFrontOf, "pine"}}),
      make_graph({{"cypress", "cypress", {}},
                  {"hydrangea", "hydrangea", {"blue flowers"}},
                  {"tulip", "tulip", {"red flowers"}}},
                 {{"hydrangea", R::Right, "cypress"}, {"tulip", R::Bottom, "hydrangea"}}),
      make_graph({{"oak", "oak", {}}, {"lily", "lily", {"white flowers"}}, {"daisy", "daisy", {}}},
                 {{"daisy", R::InFrontOf, "oak"}}),
  };
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    bool known = true;
    for (const auto& n : graphs[i].nodes()) known = known && kb.find(n.species) != nullptr;
    if (!known) {
      graphs[i] = evaluate::random_scene(i, kb, evaluate::NodeRange{2, 3}).graph;
    }
  }
  return graphs;
}

std::vector<Demonstration> default_graph_demos(const PlantKnowledgeBase& kb) {
  std::vector<Demonstration> demos;
  for (const auto& g : demo_graphs(kb)) {
    demos.push_back({evaluate::describe_scene(g), linearize_graph(g)});
  }
  return demos;
}

std::string worked_layout_answer(const SceneGraph& graph, const PlantKnowledgeBase& kb,
                                 Canvas canvas) {
  const auto depths = derive_depths(graph);
  const auto sizes = solve::assign_sizes(graph, kb);
  const Layout layout = solve::solve(graph, kb, canvas);
  std::string out = "Depths:";
  for (const auto& n : graph.nodes()) out += " " + n.id + "=" + std::to_string(depths.at(n.id)) + ",";
  out.back() = '.';
  out += "\nSizes before fitting:";
  for (const auto& n : graph.nodes()) {
    const auto& s = sizes.at(n.id);
    out += " " + n.id + " " + std::to_string(s.width) + "x" + std::to_string(s.height) + ",";
  }
  out.back() = '.';
  out += "\nLayout:\n" + serialize_layout(layout);
  return out;
}

std::vector<Demonstration> default_layout_demos(const PlantKnowledgeBase& kb, Canvas canvas) {
  std::vector<Demonstration> demos;
  for (const auto& g : demo_graphs(kb)) {
    demos.push_back({linearize_graph(g), worked_layout_answer(g, kb, canvas)});
  }
  return demos;
}

}  // namespace landsketch::concretize
