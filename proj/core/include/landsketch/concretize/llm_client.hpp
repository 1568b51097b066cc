#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <nlohmann/json.hpp>

namespace landsketch::concretize {

enum class EndpointMode { Live, Replay };

struct LlmEndpointConfig {
  std::string base_url = "https://api.openai.com/v1";
  std::string model = "gpt-4o";
  double temperature = 0.0;
  int max_tokens = 1024;
  EndpointMode mode = EndpointMode::Live;
  std::filesystem::path fixture_path;
  /// Live mode only. Empty means: read LANDSKETCH_API_KEY, then OPENAI_API_KEY.
  std::string api_key;
  int timeout_seconds = 120;

  /// Throws Error(InvalidArgument) on a negative temperature, non-positive
  /// max_tokens or a replay config whose fixture file does not exist.
  void validate() const;
};

/// An OpenAI-compatible chat completion request body:
/// {model, temperature, max_tokens, messages}.
nlohmann::json make_request(const LlmEndpointConfig& config, const nlohmann::json& messages);

/// SHA-256 of the request's compact JSON dump (object keys sorted).
std::string request_hash(const nlohmann::json& request);

class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  /// Returns the assistant message content. Throws Error(EndpointError).
  virtual std::string complete(const nlohmann::json& request) = 0;
};

/// POST {base_url}/chat/completions.
class HttpChatTransport final : public ChatTransport {
 public:
  explicit HttpChatTransport(LlmEndpointConfig config);
  std::string complete(const nlohmann::json& request) override;

 private:
  LlmEndpointConfig config_;
  std::string api_key_;
};

/// Serves responses from a JSON-lines fixture file of
/// {request_hash, request, response, timestamp}. Never touches the network;
/// an unknown request is an EndpointError.
class ReplayTransport final : public ChatTransport {
 public:
  explicit ReplayTransport(const std::filesystem::path& fixture_path);
  /// Builds the table from transcript exchanges, each {request, response}.
  static ReplayTransport from_exchanges(const nlohmann::json& exchanges);
  std::string complete(const nlohmann::json& request) override;
  std::size_t size() const noexcept { return responses_.size(); }

 private:
  ReplayTransport() = default;
  std::map<std::string, std::string> responses_;
};

/// Forwards to another transport and appends every exchange to a fixture
/// file that ReplayTransport can read.
class RecordingTransport final : public ChatTransport {
 public:
  RecordingTransport(std::shared_ptr<ChatTransport> inner, std::filesystem::path fixture_path);
  std::string complete(const nlohmann::json& request) override;

 private:
  std::shared_ptr<ChatTransport> inner_;
  std::filesystem::path path_;
  std::mutex mutex_;
};

nlohmann::json fixture_line(const nlohmann::json& request, const std::string& response,
                            const std::string& timestamp);

/// HttpChatTransport or ReplayTransport according to config.mode.
std::shared_ptr<ChatTransport> make_transport(const LlmEndpointConfig& config);

}  // namespace landsketch::concretize
