// Writes the replay fixtures under tests/fixtures. The replies are written
// by hand below (the layout tuples come from the rule-based solver) and keyed
// by the hashes of the real prompts, so the fixture only has to be
// regenerated when prompt wording, demos or the default endpoint config
// change.
//
//   author_fixtures <fixture-dir>

#include <fstream>
#include <iostream>

#include "landsketch/concretize/generators.hpp"
#include "landsketch/illustrate/worker_backend.hpp"
#include "landsketch/solve/layout_solver.hpp"
#include "landsketch/model/text_format.hpp"
#include "support/scenario.hpp"

using namespace landsketch;
using namespace landsketch::concretize;

namespace {

const char* kTimestamp = "2026-10-16T09:00:00Z";

const char* kGraphReply =
    "Plants: dogwood (pink flowers), tulip (white flowers), daisy.\n"
    "Relations: the daisy is below the dogwood; the tulip is to the right of the daisy.\n"
    "\n"
    "<daisy, bottom, dogwood>\n"
    "<tulip, right, daisy>\n"
    "nodes:\n"
    "<dogwood | pink flowers>\n"
    "<tulip | white flowers>";

// Records whatever reply the caller queued for the next request.
class Scripted final : public ChatTransport {
 public:
  explicit Scripted(std::ofstream& out) : out_(out) {}
  std::string next;
  std::string complete(const nlohmann::json& request) override {
    out_ << fixture_line(request, next, kTimestamp).dump() << '\n';
    return next;
  }

 private:
  std::ofstream& out_;
};

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: author_fixtures <fixture-dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::ofstream out(dir / landsketch::testing::kDogwoodFixture, std::ios::trunc);
  const LlmEndpointConfig config;
  const auto& kb = PlantKnowledgeBase::builtin();
  const Canvas canvas;

  Scripted transport(out);
  transport.next = kGraphReply;
  auto graph = generate_scene_graph(landsketch::testing::kDogwoodDescription, config, transport, kb);

  transport.next = "The daisy, dogwood and tulip have no depth relation, so all stay at depth 0.\n" +
                   worked_layout_answer(graph.graph, kb, canvas);
  auto layout = generate_layout(graph.graph, config, transport, kb, canvas);

  // Wire goldens shared with the render worker.
  const auto plan = illustrate::plan_composition(graph.graph, solve::solve(graph.graph, kb, canvas),
                                                 {"spring", "morning", "watercolor"}, 42);
  std::filesystem::create_directories(dir / "wire");
  std::ofstream(dir / "wire" / "plan_dogwood.json") << illustrate::plan_to_json(plan).dump(2) << '\n';
  std::ofstream(dir / "wire" / "instance_request.json")
      << illustrate::instance_request_json(plan.instances[0], plan).dump(2) << '\n';

  std::cout << linearize_graph(graph.graph) << "\n" << serialize_layout(layout.layout) << "\n";
  return 0;
}
