#include "landsketch/concretize/llm_client.hpp"

#include <cstdlib>
#include <fstream>

#include <httplib.h>

#include "internal/url.hpp"
#include "landsketch/error.hpp"
#include "landsketch/hash.hpp"
#include "landsketch/timestamp.hpp"

namespace landsketch::concretize {
namespace {

std::string env_api_key() {
  for (const char* name : {"LANDSKETCH_API_KEY", "OPENAI_API_KEY"}) {
    if (const char* v = std::getenv(name); v && *v) return v;
  }
  return {};
}

}  // namespace

void LlmEndpointConfig::validate() const {
  if (!(temperature >= 0)) throw Error(ErrorCode::InvalidArgument, "temperature must be >= 0");
  if (max_tokens <= 0) throw Error(ErrorCode::InvalidArgument, "max_tokens must be positive");
  if (mode == EndpointMode::Replay && !std::filesystem::is_regular_file(fixture_path)) {
    throw Error(ErrorCode::InvalidArgument,
                "replay fixture not found: " + fixture_path.string());
  }
}

nlohmann::json make_request(const LlmEndpointConfig& config, const nlohmann::json& messages) {
  return {{"model", config.model},
          {"temperature", config.temperature},
          {"max_tokens", config.max_tokens},
          {"messages", messages}};
}

std::string request_hash(const nlohmann::json& request) { return sha256_hex(request.dump()); }

nlohmann::json fixture_line(const nlohmann::json& request, const std::string& response,
                            const std::string& timestamp) {
  return {{"request_hash", request_hash(request)},
          {"request", request},
          {"response", response},
          {"timestamp", timestamp}};
}

HttpChatTransport::HttpChatTransport(LlmEndpointConfig config)
    : config_(std::move(config)),
      api_key_(config_.api_key.empty() ? env_api_key() : config_.api_key) {}

std::string HttpChatTransport::complete(const nlohmann::json& request) {
  const auto url = internal::split_url(config_.base_url, ErrorCode::EndpointError);
  httplib::Client client(url.origin);
  client.set_connection_timeout(10);
  client.set_read_timeout(config_.timeout_seconds);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  auto res = client.Post(url.path + "/chat/completions", headers, request.dump(),
                         "application/json");
  if (!res) {
    throw Error(ErrorCode::EndpointError,
                config_.base_url + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::EndpointError, "HTTP " + std::to_string(res->status) + ": " +
                                              res->body.substr(0, 300));
  }
  try {
    const auto body = nlohmann::json::parse(res->body);
    return body.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::EndpointError, std::string("unexpected response body: ") + e.what());
  }
}

ReplayTransport::ReplayTransport(const std::filesystem::path& fixture_path) {
  std::ifstream in(fixture_path);
  if (!in) {
    throw Error(ErrorCode::InvalidArgument, "replay fixture not found: " + fixture_path.string());
  }
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      responses_[j.at("request_hash").get<std::string>()] = j.at("response").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, fixture_path.string() + ":" +
                                                  std::to_string(number) + ": " + e.what());
    }
  }
}

ReplayTransport ReplayTransport::from_exchanges(const nlohmann::json& exchanges) {
  ReplayTransport t;
  for (const auto& e : exchanges) {
    t.responses_[request_hash(e.at("request"))] = e.at("response").get<std::string>();
  }
  return t;
}

std::string ReplayTransport::complete(const nlohmann::json& request) {
  const std::string hash = request_hash(request);
  auto it = responses_.find(hash);
  if (it == responses_.end()) {
    throw Error(ErrorCode::EndpointError, "replay miss for request " + hash);
  }
  return it->second;
}

RecordingTransport::RecordingTransport(std::shared_ptr<ChatTransport> inner,
                                       std::filesystem::path fixture_path)
    : inner_(std::move(inner)), path_(std::move(fixture_path)) {}

std::string RecordingTransport::complete(const nlohmann::json& request) {
  std::string response = inner_->complete(request);
  std::lock_guard lock(mutex_);
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error(ErrorCode::StorageError, "cannot append to " + path_.string());
  out << fixture_line(request, response, utc_timestamp()).dump() << '\n';
  return response;
}

std::shared_ptr<ChatTransport> make_transport(const LlmEndpointConfig& config) {
  config.validate();
  if (config.mode == EndpointMode::Replay) {
    return std::make_shared<ReplayTransport>(config.fixture_path);
  }
  return std::make_shared<HttpChatTransport>(config);
}

}  // namespace landsketch::concretize
