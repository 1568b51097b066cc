#include "landsketch/model/session.hpp"

#include "landsketch/error.hpp"
#include "landsketch/model/json_io.hpp"

namespace landsketch {

using nlohmann::json;

std::string_view to_string(IterationKind kind) noexcept {
  return kind == IterationKind::Render ? "render" : "concretize";
}

json record_to_json(const IterationRecord& r) {
  json j{{"index", r.index},
         {"kind", std::string(to_string(r.kind))},
         {"text", r.text},
         {"timestamp", r.timestamp},
         {"seed", r.seed},
         {"source", r.source},
         {"style", r.style},
         {"prompts", r.prompts},
         {"transcripts", r.transcripts}};
  j["graph"] = r.graph ? graph_to_json(*r.graph) : json(nullptr);
  j["layout"] = r.layout ? layout_to_json(*r.layout) : json(nullptr);
  j["render_ref"] = r.render_ref ? json(*r.render_ref) : json(nullptr);
  j["error"] = r.error ? json(*r.error) : json(nullptr);
  return j;
}

IterationRecord record_from_json(const json& j) {
  try {
    IterationRecord r;
    r.index = j.at("index").get<int>();
    r.kind = j.at("kind").get<std::string>() == "render" ? IterationKind::Render
                                                         : IterationKind::Concretize;
    r.text = j.value("text", "");
    r.timestamp = j.value("timestamp", "");
    r.seed = j.value("seed", std::uint64_t{0});
    r.source = j.value("source", "");
    r.style = j.value("style", json::object());
    r.prompts = j.value("prompts", json::array());
    r.transcripts = j.value("transcripts", json::array());
    if (j.contains("graph") && !j["graph"].is_null()) r.graph = graph_from_json(j["graph"]);
    if (j.contains("layout") && !j["layout"].is_null()) r.layout = layout_from_json(j["layout"]);
    if (j.contains("render_ref") && !j["render_ref"].is_null()) {
      r.render_ref = j["render_ref"].get<std::string>();
    }
    if (j.contains("error") && !j["error"].is_null()) r.error = j["error"].get<std::string>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::StorageError, std::string("bad iteration record: ") + e.what());
  }
}

DesignSession::DesignSession(std::string id, std::string description, std::string created_at)
    : id_(std::move(id)), description_(std::move(description)), created_at_(std::move(created_at)) {}

const IterationRecord& DesignSession::append(IterationRecord record) {
  const int next = static_cast<int>(iterations_.size());
  if (record.index != 0 && record.index != next) {
    throw Error(ErrorCode::InvalidArgument,
                "iteration index " + std::to_string(record.index) + " where " +
                    std::to_string(next) + " was expected");
  }
  record.index = next;
  iterations_.push_back(std::move(record));
  return iterations_.back();
}

const IterationRecord* DesignSession::latest_with_layout() const {
  for (auto it = iterations_.rbegin(); it != iterations_.rend(); ++it) {
    if (it->layout) return &*it;
  }
  return nullptr;
}

nlohmann::json session_to_json(const DesignSession& session) {
  nlohmann::json iterations = nlohmann::json::array();
  for (const auto& r : session.iterations()) iterations.push_back(record_to_json(r));
  return {{"id", session.id()},
          {"description", session.description()},
          {"created_at", session.created_at()},
          {"iterations", iterations}};
}

}  // namespace landsketch
