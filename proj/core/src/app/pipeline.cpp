#include "landsketch/app/pipeline.hpp"

#include "landsketch/concretize/generators.hpp"
#include "landsketch/error.hpp"
#include "landsketch/hash.hpp"
#include "landsketch/illustrate/render.hpp"
#include "landsketch/model/json_io.hpp"
#include "landsketch/solve/layout_solver.hpp"
#include "landsketch/timestamp.hpp"

namespace landsketch::app {
namespace {

std::string describe(const Error& e) { return std::string(to_string(e.code())) + ": " + e.detail(); }

nlohmann::json stage(const char* name, const concretize::Transcript& t) {
  return {{"stage", name}, {"exchanges", t.exchanges}};
}

// Endpoint settings as they were when the record was made, read back from
// its first request so later config edits do not change the request hashes.
concretize::LlmEndpointConfig recorded_endpoint(const nlohmann::json& exchanges,
                                                concretize::LlmEndpointConfig base) {
  if (!exchanges.empty()) {
    const auto& req = exchanges[0].at("request");
    base.model = req.at("model").get<std::string>();
    base.temperature = req.at("temperature").get<double>();
    base.max_tokens = req.at("max_tokens").get<int>();
  }
  return base;
}

}  // namespace

bool ReplayReport::ok() const {
  if (!state_identical) return false;
  for (const auto& s : steps) {
    if (!s.reproduced) return false;
  }
  return true;
}

nlohmann::json replay_report_to_json(const ReplayReport& report) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : report.steps) {
    steps.push_back({{"index", s.index},
                     {"kind", to_string(s.kind)},
                     {"reproduced", s.reproduced},
                     {"detail", s.detail}});
  }
  return {{"session_id", report.session_id},
          {"state_identical", report.state_identical},
          {"ok", report.ok()},
          {"steps", steps}};
}

Studio::Studio(AppConfig config, std::shared_ptr<concretize::ChatTransport> transport,
               std::shared_ptr<illustrate::RenderBackend> backend)
    : config_(std::move(config)),
      kb_(load_kb(config_)),
      store_(config_.data_dir),
      transport_(transport ? std::move(transport) : concretize::make_transport(config_.endpoint)),
      backend_(backend ? std::move(backend) : std::shared_ptr<illustrate::RenderBackend>(make_backend(config_.backend))) {}

std::string Studio::create_session(const std::string& description) {
  return store_.create(description).id();
}

DesignSession Studio::session(const std::string& id) const { return store_.load(id); }

IterationRecord Studio::step_concretize(const std::string& id, const ConcretizeInput& input) {
  auto guard = store_.lock(id);
  const DesignSession session = store_.load(id);

  IterationRecord rec;
  rec.kind = IterationKind::Concretize;
  rec.timestamp = utc_timestamp();
  rec.seed = input.seed;
  rec.text = input.text.value_or(session.description());

  std::optional<SceneGraph> edited;
  if (input.graph) {
    edited = graph_from_json(*input.graph);
    for (const auto& n : edited->nodes()) kb_.at(n.species);
    rec.source = "edited-graph";
  } else {
    if (rec.text.empty()) throw Error(ErrorCode::InvalidArgument, "empty description");
    rec.source = "generated";
  }

  try {
    if (edited) {
      rec.graph = *edited;
    } else {
      auto g = concretize::generate_scene_graph(rec.text, config_.endpoint, *transport_, kb_);
      rec.prompts.push_back({{"stage", "graph"}, {"prompt", g.transcript.prompt}});
      rec.transcripts.push_back(stage("graph", g.transcript));
      rec.graph = std::move(g.graph);
    }
    try {
      auto l = concretize::generate_layout(*rec.graph, config_.endpoint, *transport_, kb_,
                                           config_.canvas);
      rec.prompts.push_back({{"stage", "layout"}, {"prompt", l.transcript.prompt}});
      rec.transcripts.push_back(stage("layout", l.transcript));
      rec.layout = std::move(l.layout);
    } catch (const Error& e) {
      if (!config_.fallback_oracle) throw;
      rec.transcripts.push_back({{"stage", "layout"}, {"fallback_reason", describe(e)}});
      rec.layout = solve::solve(*rec.graph, kb_, config_.canvas);
      rec.source = "oracle-fallback";
    }
  } catch (const Error& e) {
    rec.error = describe(e);
    rec.layout.reset();
    store_.append(id, std::move(rec));
    throw;
  }
  return store_.append(id, std::move(rec));
}

IterationRecord Studio::step_render(const std::string& id, const RenderInput& input) {
  auto guard = store_.lock(id);
  const DesignSession session = store_.load(id);
  const IterationRecord* base = session.latest_with_layout();
  if (!base || !base->graph) throw Error(ErrorCode::Precondition, "session has no layout yet");

  const SceneGraph graph = *base->graph;
  const Layout layout = input.layout ? layout_from_json(*input.layout) : *base->layout;
  const auto plan = illustrate::plan_composition(graph, layout, input.style, input.seed, kb_,
                                                 config_.frozen_fraction, config_.vocabulary);

  IterationRecord rec;
  rec.kind = IterationKind::Render;
  rec.timestamp = utc_timestamp();
  rec.seed = input.seed;
  rec.text = base->text;
  rec.source = input.layout ? "layout-override" : "render";
  rec.style = illustrate::style_to_json(input.style);
  rec.transcripts.push_back(
      {{"stage", "render"}, {"backend", backend_->name()}, {"plan", illustrate::plan_to_json(plan)}});
  try {
    const auto result = illustrate::render_scene(plan, *backend_);
    rec.render_ref = store_.put_image(result.image);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::StorageError) throw;
    rec.error = describe(e);
    store_.append(id, std::move(rec));
    throw;
  }
  rec.graph = graph;
  rec.layout = layout;
  return store_.append(id, std::move(rec));
}

ReplayReport Studio::replay_session(const std::string& id) {
  auto guard = store_.lock(id);
  ReplayReport report;
  report.session_id = id;
  const DesignSession loaded = store_.load(id);

  DesignSession rebuilt(loaded.id(), loaded.description(), loaded.created_at());
  for (const auto& rec : loaded.iterations()) rebuilt.append(record_from_json(record_to_json(rec)));
  report.state_identical = rebuilt == loaded && store_.load(id) == loaded;

  for (const auto& rec : loaded.iterations()) {
    ReplayStep step{rec.index, rec.kind, false, {}};
    if (rec.error) {
      step.reproduced = true;
      step.detail = "skipped: recorded failure";
      report.steps.push_back(step);
      continue;
    }
    try {
      if (rec.kind == IterationKind::Concretize) {
        nlohmann::json exchanges = nlohmann::json::array();
        for (const auto& t : rec.transcripts) {
          if (t.contains("exchanges")) {
            for (const auto& e : t["exchanges"]) exchanges.push_back(e);
          }
        }
        auto transport = concretize::ReplayTransport::from_exchanges(exchanges);
        const auto endpoint = recorded_endpoint(exchanges, config_.endpoint);
        const Canvas canvas = rec.layout ? rec.layout->canvas() : config_.canvas;
        SceneGraph graph = rec.source == "edited-graph"
                               ? *rec.graph
                               : concretize::generate_scene_graph(rec.text, endpoint, transport, kb_).graph;
        Layout layout = rec.source == "oracle-fallback"
                            ? solve::solve(graph, kb_, canvas)
                            : concretize::generate_layout(graph, endpoint, transport, kb_, canvas).layout;
        step.reproduced = rec.graph && graph == *rec.graph && rec.layout && layout == *rec.layout;
        step.detail = step.reproduced ? "graph and layout identical" : "output differs";
      } else {
        const auto& t = rec.transcripts.at(0);
        const auto stored_plan = illustrate::plan_from_json(t.at("plan"));
        const auto plan = illustrate::plan_composition(
            *rec.graph, *rec.layout, illustrate::style_from_json(rec.style, config_.vocabulary),
            rec.seed, kb_, stored_plan.frozen_fraction, config_.vocabulary);
        if (t.at("backend").get<std::string>() != backend_->name()) {
          step.detail = "recorded with backend " + t.at("backend").get<std::string>();
        } else if (!(plan == stored_plan)) {
          step.detail = "plan differs";
        } else {
          const auto png = encode_png(illustrate::render_scene(plan, *backend_).image);
          step.reproduced = rec.render_ref && sha256_hex(png) == *rec.render_ref;
          step.detail = step.reproduced ? "image identical" : "image differs";
        }
      }
    } catch (const Error& e) {
      step.detail = describe(e);
    } catch (const std::exception& e) {
      step.detail = e.what();
    }
    report.steps.push_back(step);
  }
  return report;
}

evaluate::BenchmarkReport run_named_benchmark(const std::string& generator, std::uint64_t seed,
                                              int sample_count, const AppConfig& config,
                                              const PlantKnowledgeBase& kb,
                                              concretize::ChatTransport* transport,
                                              std::function<void(int, int)> progress) {
  evaluate::LayoutGenerator gen;
  if (generator == "oracle") {
    gen = [&](const SceneGraph& g) { return solve::solve(g, kb, config.canvas); };
  } else if (generator == "llm") {
    if (!transport) throw Error(ErrorCode::InvalidArgument, "llm generator needs an endpoint");
    gen = [&](const SceneGraph& g) {
      return concretize::generate_layout(g, config.endpoint, *transport, kb, config.canvas).layout;
    };
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown generator: " + generator);
  }
  evaluate::MetricConfig metrics;
  metrics.sample_count = sample_count;
  metrics.validate();
  evaluate::BenchmarkOptions options;
  options.canvas = config.canvas;
  options.generator_name = generator;
  options.progress = std::move(progress);
  return evaluate::run_benchmark(gen, metrics, kb, seed, options);
}

}  // namespace landsketch::app
