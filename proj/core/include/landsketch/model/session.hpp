#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "landsketch/model/graph.hpp"
#include "landsketch/model/layout.hpp"

namespace landsketch {

enum class IterationKind { Concretize, Render };

std::string_view to_string(IterationKind kind) noexcept;

/// One step of a design session. Everything needed to re-run the step in
/// replay mode is kept: seed, style, prompts and transcripts.
struct IterationRecord {
  int index = 0;
  IterationKind kind = IterationKind::Concretize;
  std::string text;
  std::optional<SceneGraph> graph;
  std::optional<Layout> layout;
  std::optional<std::string> render_ref;
  std::string timestamp;
  std::uint64_t seed = 0;
  /// "generated", "edited-graph", "oracle-fallback", "layout-override"...
  std::string source;
  std::optional<std::string> error;
  nlohmann::json style = nlohmann::json::object();
  nlohmann::json prompts = nlohmann::json::array();
  nlohmann::json transcripts = nlohmann::json::array();

  bool operator==(const IterationRecord&) const = default;
};

nlohmann::json record_to_json(const IterationRecord& record);
IterationRecord record_from_json(const nlohmann::json& j);

/// Append-only history of design iterations.
class DesignSession {
 public:
  DesignSession() = default;
  DesignSession(std::string id, std::string description, std::string created_at);

  const std::string& id() const noexcept { return id_; }
  const std::string& description() const noexcept { return description_; }
  const std::string& created_at() const noexcept { return created_at_; }
  const std::vector<IterationRecord>& iterations() const noexcept {
    return iterations_;
  }

  /// Stamps the next index onto the record and stores it. Throws
  /// Error(InvalidArgument) if the record already carries a different index
  /// that would break strict ordering.
  const IterationRecord& append(IterationRecord record);

  /// Latest record that holds a layout, if any.
  const IterationRecord* latest_with_layout() const;

  bool operator==(const DesignSession&) const = default;

 private:
  std::string id_;
  std::string description_;
  std::string created_at_;
  std::vector<IterationRecord> iterations_;
};

/// {id, description, created_at, iterations}.
nlohmann::json session_to_json(const DesignSession& session);

}  // namespace landsketch
