#include "landsketch/app/config.hpp"

#include <fstream>
#include <set>

#include "landsketch/error.hpp"
#include "landsketch/illustrate/mock_backend.hpp"
#include "landsketch/illustrate/worker_backend.hpp"
#include "landsketch/model/json_io.hpp"

namespace landsketch::app {
namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& known, const char* where) {
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw Error(ErrorCode::InvalidArgument, std::string(where) + key);
  }
}

std::filesystem::path resolve(const std::filesystem::path& p, const std::filesystem::path& base) {
  if (p.empty() || p.is_absolute() || base.empty()) return p;
  return base / p;
}

BackendConfig backend_from_json(const nlohmann::json& j) {
  BackendConfig b;
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    if (text == "mock") return b;
    const std::string prefix = "worker(";
    if (text.rfind(prefix, 0) == 0 && text.back() == ')') {
      b.kind = "worker";
      b.url = text.substr(prefix.size(), text.size() - prefix.size() - 1);
      return b;
    }
    throw Error(ErrorCode::InvalidArgument, "backend: " + text);
  }
  reject_unknown(j, {"kind", "url", "seed"}, "unknown backend key: ");
  b.kind = j.value("kind", b.kind);
  b.url = j.value("url", b.url);
  b.seed = j.value("seed", b.seed);
  if (b.kind != "mock" && b.kind != "worker") throw Error(ErrorCode::InvalidArgument, "backend kind: " + b.kind);
  return b;
}

}  // namespace

AppConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "config must be a JSON object");
  reject_unknown(j,
                 {"endpoint", "model", "backend", "canvas", "kb_path", "fallback_oracle",
                  "frozen_fraction", "data_dir", "server", "vocabulary"},
                 "unknown config key: ");
  AppConfig c;
  try {
    if (j.contains("endpoint")) {
      const auto& e = j["endpoint"];
      reject_unknown(e,
                     {"mode", "base_url", "model", "temperature", "max_tokens", "timeout_seconds",
                      "fixture_path"},
                     "unknown endpoint key: ");
      const auto mode = e.value("mode", std::string("live"));
      if (mode != "live" && mode != "replay") throw Error(ErrorCode::InvalidArgument, "endpoint mode: " + mode);
      c.endpoint.mode = mode == "replay" ? concretize::EndpointMode::Replay : concretize::EndpointMode::Live;
      c.endpoint.base_url = e.value("base_url", c.endpoint.base_url);
      c.endpoint.model = e.value("model", c.endpoint.model);
      c.endpoint.temperature = e.value("temperature", c.endpoint.temperature);
      c.endpoint.max_tokens = e.value("max_tokens", c.endpoint.max_tokens);
      c.endpoint.timeout_seconds = e.value("timeout_seconds", c.endpoint.timeout_seconds);
      c.endpoint.fixture_path = resolve(e.value("fixture_path", std::string()), base_dir);
    }
    if (j.contains("model")) c.endpoint.model = j["model"].get<std::string>();
    if (j.contains("backend")) c.backend = backend_from_json(j["backend"]);
    if (j.contains("canvas")) c.canvas = j["canvas"].get<Canvas>();
    c.kb_path = resolve(j.value("kb_path", std::string()), base_dir);
    c.fallback_oracle = j.value("fallback_oracle", c.fallback_oracle);
    c.frozen_fraction = j.value("frozen_fraction", c.frozen_fraction);
    if (j.contains("data_dir")) c.data_dir = resolve(j["data_dir"].get<std::string>(), base_dir);
    if (j.contains("server")) {
      reject_unknown(j["server"], {"host", "port"}, "unknown server key: ");
      c.host = j["server"].value("host", c.host);
      c.port = j["server"].value("port", c.port);
    }
    if (j.contains("vocabulary")) {
      const auto& v = j["vocabulary"];
      reject_unknown(v, {"seasons", "times", "styles"}, "unknown vocabulary key: ");
      c.vocabulary.seasons = v.value("seasons", c.vocabulary.seasons);
      c.vocabulary.times = v.value("times", c.vocabulary.times);
      c.vocabulary.styles = v.value("styles", c.vocabulary.styles);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("config: ") + e.what());
  }
  validate_canvas(c.canvas);
  if (!(c.frozen_fraction >= 0.0 && c.frozen_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "frozen_fraction outside [0, 1]");
  }
  if (c.backend.kind == "worker" && c.backend.url.empty()) {
    throw Error(ErrorCode::InvalidArgument, "worker backend needs a url");
  }
  if (c.port < 0 || c.port > 65535) throw Error(ErrorCode::InvalidArgument, "server port");
  return c;
}

AppConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read config " + path.string());
  auto j = nlohmann::json::parse(in, nullptr, false, true);
  if (j.is_discarded()) throw Error(ErrorCode::InvalidArgument, "config is not valid JSON: " + path.string());
  return config_from_json(j, path.parent_path());
}

nlohmann::json config_to_json(const AppConfig& c) {
  nlohmann::json backend = {{"kind", c.backend.kind}, {"url", c.backend.url}, {"seed", c.backend.seed}};
  return {{"endpoint",
           {{"mode", c.endpoint.mode == concretize::EndpointMode::Replay ? "replay" : "live"},
            {"base_url", c.endpoint.base_url},
            {"model", c.endpoint.model},
            {"temperature", c.endpoint.temperature},
            {"max_tokens", c.endpoint.max_tokens},
            {"timeout_seconds", c.endpoint.timeout_seconds},
            {"fixture_path", c.endpoint.fixture_path.string()}}},
          {"backend", backend},
          {"canvas", c.canvas},
          {"kb_path", c.kb_path.string()},
          {"fallback_oracle", c.fallback_oracle},
          {"frozen_fraction", c.frozen_fraction},
          {"data_dir", c.data_dir.string()},
          {"server", {{"host", c.host}, {"port", c.port}}},
          {"vocabulary",
           {{"seasons", c.vocabulary.seasons},
            {"times", c.vocabulary.times},
            {"styles", c.vocabulary.styles}}}};
}

PlantKnowledgeBase load_kb(const AppConfig& config) {
  if (config.kb_path.empty()) return PlantKnowledgeBase::builtin();
  std::ifstream in(config.kb_path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read kb " + config.kb_path.string());
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::InvalidArgument, "kb is not valid JSON");
  return kb_from_json(j);
}

std::unique_ptr<illustrate::RenderBackend> make_backend(const BackendConfig& config) {
  if (config.kind == "worker") return std::make_unique<illustrate::WorkerBackend>(config.url);
  return illustrate::make_mock_backend(config.seed);
}

}  // namespace landsketch::app
