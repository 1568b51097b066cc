#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "landsketch/concretize/llm_client.hpp"
#include "landsketch/illustrate/backend.hpp"
#include "landsketch/illustrate/plan.hpp"
#include "landsketch/model/knowledge.hpp"
#include "landsketch/model/layout.hpp"

namespace landsketch::app {

struct BackendConfig {
  /// "mock" or "worker".
  std::string kind = "mock";
  /// Worker base URL.
  std::string url;
  /// Mock backend seed.
  std::uint64_t seed = 0;

  bool operator==(const BackendConfig&) const = default;
};

/// Service and CLI settings. Keys of the JSON file:
///
///   endpoint         {mode: live|replay, base_url, model, temperature,
///                     max_tokens, timeout_seconds, fixture_path}
///   model            shorthand for endpoint.model
///   backend          "mock" | "worker(<url>)" | {kind, url, seed}
///   canvas           {width, height}
///   kb_path          plant table JSON; empty uses the built-in table
///   fallback_oracle  use the rule-based solver when layout generation fails
///   frozen_fraction  in [0, 1]
///   data_dir         session logs and images
///   server           {host, port}
///
/// Relative paths are resolved against the config file's directory. The API
/// key is never read from the file; see LlmEndpointConfig.
struct AppConfig {
  concretize::LlmEndpointConfig endpoint;
  BackendConfig backend;
  Canvas canvas;
  std::filesystem::path kb_path;
  bool fallback_oracle = false;
  double frozen_fraction = illustrate::kDefaultFrozenFraction;
  std::filesystem::path data_dir = "landsketch-data";
  std::string host = "127.0.0.1";
  int port = 8080;
  illustrate::StyleVocabulary vocabulary;
};

/// Throws Error(InvalidArgument) on unknown keys or bad values.
AppConfig config_from_json(const nlohmann::json& j,
                           const std::filesystem::path& base_dir = {});
AppConfig load_config(const std::filesystem::path& path);
nlohmann::json config_to_json(const AppConfig& config);

PlantKnowledgeBase load_kb(const AppConfig& config);
std::unique_ptr<illustrate::RenderBackend> make_backend(const BackendConfig& config);

}  // namespace landsketch::app
