// landsketch command line: service, one-shot generation, oracle layouts,
// benchmarks, SSIM and session replay.
//
// Exit codes: 0 success, 2 validation error, 3 endpoint or backend error,
// 1 anything else.

#include <CLI11.hpp>

#include <cctype>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "landsketch/app/service.hpp"
#include "landsketch/error.hpp"
#include "landsketch/evaluate/ssim.hpp"
#include "landsketch/model/json_io.hpp"
#include "landsketch/model/text_format.hpp"
#include "landsketch/solve/layout_solver.hpp"

using namespace landsketch;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitValidation = 2;
constexpr int kExitExternal = 3;

app::Service* g_service = nullptr;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// JSON {nodes, edges} or triple text.
SceneGraph read_graph(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::InvalidArgument, path + " is not valid JSON");
    return graph_from_json(j);
  }
  return parse_triples(text);
}

struct Common {
  std::string config_path;
  std::string data_dir;
  std::string fixture;
  std::string backend;
  std::string worker_url;
  bool fallback_oracle = false;
};

app::AppConfig load(const Common& c) {
  app::AppConfig config = c.config_path.empty() ? app::AppConfig{} : app::load_config(c.config_path);
  if (!c.data_dir.empty()) config.data_dir = c.data_dir;
  if (!c.fixture.empty()) {
    config.endpoint.mode = concretize::EndpointMode::Replay;
    config.endpoint.fixture_path = c.fixture;
  }
  if (!c.backend.empty()) {
    if (c.backend != "mock" && c.backend != "worker") {
      throw Error(ErrorCode::InvalidArgument, "backend must be mock or worker");
    }
    config.backend.kind = c.backend;
  }
  if (!c.worker_url.empty()) config.backend.url = c.worker_url;
  if (config.backend.kind == "worker" && config.backend.url.empty()) {
    throw Error(ErrorCode::InvalidArgument, "worker backend needs --worker-url");
  }
  if (c.fallback_oracle) config.fallback_oracle = true;
  return config;
}

void add_common(CLI::App* cmd, Common& c, bool endpoint, bool backend) {
  cmd->add_option("--config", c.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--data-dir", c.data_dir, "Session and image directory");
  if (endpoint) {
    cmd->add_option("--fixture", c.fixture, "Replay LLM answers from this fixture file")
        ->check(CLI::ExistingFile);
    cmd->add_flag("--fallback-oracle", c.fallback_oracle,
                  "Use the rule-based solver when layout generation fails");
  }
  if (backend) {
    cmd->add_option("--backend", c.backend, "Render backend")->check(CLI::IsMember({"mock", "worker"}));
    cmd->add_option("--worker-url", c.worker_url, "Render worker base URL");
  }
}

int exit_code_for(const Error& e) {
  switch (classify(e.code())) {
    case ErrorClass::Validation: return kExitValidation;
    case ErrorClass::External: return kExitExternal;
    case ErrorClass::Other: return kExitOther;
  }
  return kExitOther;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Landscape scene concretization, layout and rendering"};
  cli.require_subcommand(1);

  Common common;

  // serve
  auto* serve = cli.add_subcommand("serve", "Run the HTTP JSON service");
  add_common(serve, common, true, true);
  std::string host;
  int port = -1;
  serve->add_option("--host", host, "Listen address");
  serve->add_option("--port", port, "Listen port (0 picks a free one)")->check(CLI::Range(0, 65535));

  // generate
  auto* generate = cli.add_subcommand("generate", "Text or graph to layout and rendering");
  add_common(generate, common, true, true);
  std::string description, graph_file, out_png, out_json;
  std::uint64_t seed = 0;
  std::string season = "summer", time_of_day = "noon", style = "watercolor";
  bool no_render = false;
  auto* desc_opt = generate->add_option("--description", description, "Scene description");
  auto* graph_opt =
      generate->add_option("--graph-file", graph_file, "Scene graph (JSON or triples)")->check(CLI::ExistingFile);
  desc_opt->excludes(graph_opt);
  generate->add_option("--seed", seed, "Render seed");
  generate->add_option("--season", season);
  generate->add_option("--time", time_of_day);
  generate->add_option("--style", style);
  generate->add_option("--out", out_png, "Write the rendering to this PNG");
  generate->add_option("--json", out_json, "Write the session record JSON here");
  generate->add_flag("--no-render", no_render, "Stop after the layout");

  // oracle
  auto* oracle = cli.add_subcommand("oracle", "Rule-based layout for a scene graph");
  std::string oracle_graph;
  int canvas_w = 512, canvas_h = 512;
  bool oracle_json = false;
  oracle->add_option("--graph-file", oracle_graph, "Scene graph (JSON or triples)")
      ->required()
      ->check(CLI::ExistingFile);
  oracle->add_option("--width", canvas_w, "Canvas width")->check(CLI::PositiveNumber);
  oracle->add_option("--height", canvas_h, "Canvas height")->check(CLI::PositiveNumber);
  oracle->add_flag("--json", oracle_json, "Print JSON instead of layout tuples");

  // benchmark
  auto* bench = cli.add_subcommand("benchmark", "Layout benchmark over random scenes");
  add_common(bench, common, true, false);
  std::string generator = "oracle";
  int samples = 100;
  std::uint64_t bench_seed = 0;
  bool bench_json = false;
  bench->add_option("--generator", generator, "oracle or llm")->check(CLI::IsMember({"oracle", "llm"}));
  bench->add_option("--samples", samples, "Number of scenes")->check(CLI::NonNegativeNumber);
  bench->add_option("--seed", bench_seed, "Sampler seed");
  bench->add_flag("--json", bench_json, "Print the full JSON report");

  // ssim
  auto* ssim = cli.add_subcommand("ssim", "SSIM of two PNGs, or group mean SSIM of several");
  std::vector<std::string> images;
  ssim->add_option("images", images, "PNG files")->required()->expected(2, -1)->check(CLI::ExistingFile);

  // session
  auto* session = cli.add_subcommand("session", "Inspect and replay stored sessions");
  session->require_subcommand(1);
  add_common(session, common, true, true);
  auto* replay = session->add_subcommand("replay", "Re-run a session from its log and compare");
  std::string session_id;
  replay->add_option("id", session_id, "Session id")->required();
  auto* show = session->add_subcommand("show", "Print a session as JSON");
  show->add_option("id", session_id, "Session id")->required();
  auto* list = session->add_subcommand("list", "List session ids");
  for (auto* sub : {replay, show, list}) sub->fallthrough();

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*oracle) {
      const Layout layout = solve::solve(read_graph(oracle_graph), PlantKnowledgeBase::builtin(),
                                         Canvas{canvas_w, canvas_h});
      if (oracle_json) {
        std::cout << layout_to_json(layout).dump(2) << "\n";
      } else {
        std::cout << serialize_layout(layout) << "\n";
      }
      return kExitOk;
    }

    if (*ssim) {
      std::vector<Image> loaded;
      for (const auto& p : images) loaded.push_back(read_png(p));
      const double v = loaded.size() == 2 ? evaluate::ssim(loaded[0], loaded[1])
                                          : evaluate::group_mean_ssim(loaded);
      std::printf("%.6f\n", v);
      return kExitOk;
    }

    if (*bench) {
      const auto config = load(common);
      std::shared_ptr<concretize::ChatTransport> transport;
      if (generator == "llm") transport = concretize::make_transport(config.endpoint);
      const auto report = app::run_named_benchmark(generator, bench_seed, samples, config,
                                                   app::load_kb(config), transport.get());
      if (bench_json) {
        std::cout << evaluate::report_to_json(report).dump(2) << "\n";
      } else {
        std::cout << evaluate::report_table(report);
      }
      return kExitOk;
    }

    const auto config = load(common);

    if (*serve) {
      auto cfg = config;
      if (!host.empty()) cfg.host = host;
      if (port >= 0) cfg.port = port;
      app::Studio studio(cfg);
      app::Service service(studio);
      const int bound = service.bind(cfg.host, cfg.port);
      g_service = &service;
      std::signal(SIGINT, [](int) { if (g_service) g_service->stop(); });
      std::signal(SIGTERM, [](int) { if (g_service) g_service->stop(); });
      std::cerr << "listening on http://" << cfg.host << ":" << bound << "\n";
      service.listen();
      g_service = nullptr;
      return kExitOk;
    }

    if (*generate) {
      if (description.empty() && graph_file.empty()) {
        throw Error(ErrorCode::InvalidArgument, "give --description or --graph-file");
      }
      app::Studio studio(config);
      app::ConcretizeInput in;
      std::string text = description;
      if (!graph_file.empty()) {
        in.graph = graph_to_json(read_graph(graph_file));
        text = "graph from " + graph_file;
      }
      const auto id = studio.create_session(text);
      std::cerr << "session " << id << "\n";
      auto rec = studio.step_concretize(id, in);
      std::cout << linearize_graph(*rec.graph) << "\n" << serialize_layout(*rec.layout) << "\n";
      if (!no_render) {
        rec = studio.step_render(id, {std::nullopt, {season, time_of_day, style}, seed});
        std::cerr << "image " << *rec.render_ref << "\n";
        if (!out_png.empty()) write_png(out_png, studio.store().image(*rec.render_ref));
      }
      if (!out_json.empty()) {
        std::ofstream(out_json) << session_to_json(studio.session(id)).dump(2) << "\n";
      }
      return kExitOk;
    }

    if (*session) {
      app::Studio studio(config);
      if (*replay) {
        const auto report = studio.replay_session(session_id);
        std::cout << app::replay_report_to_json(report).dump(2) << "\n";
        return report.ok() ? kExitOk : kExitOther;
      }
      if (*show) {
        std::cout << session_to_json(studio.session(session_id)).dump(2) << "\n";
        return kExitOk;
      }
      for (const auto& id : studio.store().list()) std::cout << id << "\n";
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}
