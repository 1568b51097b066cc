#include "landsketch/concretize/generators.hpp"

#include <functional>
#include <set>

#include "landsketch/error.hpp"
#include "landsketch/model/text_format.hpp"

namespace landsketch::concretize {

const char* const kGraphFormatReminder =
    "Answer again with only the scene graph: one triple <a, relation, b> per line using the "
    "six relation words, then an optional \"nodes:\" section.";
const char* const kLayoutFormatReminder =
    "Answer again with only the layout: one line [name, [x, y, width, height], z] per plant of "
    "the graph, inside the canvas.";

namespace {

bool is_syntax_failure(ErrorCode code) {
  return code == ErrorCode::MalformedTriple || code == ErrorCode::MalformedTuple;
}

// Runs the first attempt and at most one retry. `parse` throws Error on an
// unusable reply.
template <typename T>
T converse(const PromptBundle& bundle, const LlmEndpointConfig& config, ChatTransport& transport,
           const char* reminder, Transcript& transcript,
           const std::function<T(const std::string&)>& parse) {
  transcript.prompt = bundle_to_json(bundle);
  transcript.exchanges = nlohmann::json::array();
  nlohmann::json messages = to_messages(bundle);
  for (int attempt = 0;; ++attempt) {
    const auto request = make_request(config, messages);
    const std::string reply = transport.complete(request);
    transcript.exchanges.push_back({{"request", request}, {"response", reply}});
    try {
      return parse(reply);
    } catch (const Error& e) {
      if (attempt == 1) {
        if (is_syntax_failure(e.code())) {
          throw Error(ErrorCode::ParseFailedAfterRetry, reply);
        }
        throw;
      }
      messages.push_back({{"role", "assistant"}, {"content", reply}});
      messages.push_back({{"role", "user"},
                          {"content", "Your answer could not be used (" +
                                          std::string(to_string(e.code())) + ": " + e.detail() +
                                          "). " + reminder}});
    }
  }
}

void require_node_names(const Layout& layout, const SceneGraph& graph) {
  std::set<std::string> have, want;
  for (const auto& e : layout.elements()) have.insert(e.name);
  for (const auto& n : graph.nodes()) want.insert(n.id);
  if (have == want) return;
  std::string detail;
  for (const auto& n : want)
    if (!have.count(n)) detail += " missing:" + n;
  for (const auto& n : have)
    if (!want.count(n)) detail += " extra:" + n;
  throw Error(ErrorCode::NameMismatch, detail.substr(1));
}

}  // namespace

GraphGeneration generate_scene_graph(const std::string& description,
                                     const LlmEndpointConfig& config, ChatTransport& transport,
                                     const PlantKnowledgeBase& kb,
                                     const GeneratorOptions& options) {
  if (description.empty()) throw Error(ErrorCode::InvalidArgument, "empty description");
  const auto demos = options.demos ? *options.demos : default_graph_demos(kb);
  const PromptBundle bundle = build_graph_prompt(description, kb, demos, options.prompt);
  GraphGeneration out;
  out.graph = converse<SceneGraph>(
      bundle, config, transport, kGraphFormatReminder, out.transcript,
      [](const std::string& reply) {
        SceneGraph g = parse_triples(reply);
        if (g.empty()) throw Error(ErrorCode::MalformedTriple, "no triples found");
        return g;
      });
  return out;
}

LayoutGeneration generate_layout(const SceneGraph& graph, const LlmEndpointConfig& config,
                                 ChatTransport& transport, const PlantKnowledgeBase& kb,
                                 Canvas canvas, const GeneratorOptions& options) {
  const auto demos = options.demos ? *options.demos : default_layout_demos(kb, canvas);
  const PromptBundle bundle = build_layout_prompt(graph, kb, canvas, demos, options.prompt);
  LayoutGeneration out;
  out.layout = converse<Layout>(
      bundle, config, transport, kLayoutFormatReminder, out.transcript,
      [&](const std::string& reply) {
        Layout l = parse_layout(reply, canvas);
        if (l.empty() && !graph.empty()) {
          throw Error(ErrorCode::MalformedTuple, "no layout tuples found");
        }
        require_node_names(l, graph);
        return l;
      });
  return out;
}

nlohmann::json transcript_to_json(const Transcript& transcript) {
  return {{"prompt", transcript.prompt}, {"exchanges", transcript.exchanges}};
}

}  // namespace landsketch::concretize
