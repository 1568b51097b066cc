#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "landsketch/model/graph.hpp"
#include "landsketch/model/knowledge.hpp"
#include "landsketch/model/layout.hpp"

namespace landsketch::illustrate {

struct StyleParams {
  std::string season = "summer";
  std::string time_of_day = "noon";
  std::string style = "watercolor";

  bool operator==(const StyleParams&) const = default;
};

/// Closed vocabularies a StyleParams is checked against.
struct StyleVocabulary {
  std::vector<std::string> seasons{"spring", "summer", "autumn", "winter"};
  std::vector<std::string> times{"dawn", "morning", "noon", "afternoon", "dusk", "night"};
  std::vector<std::string> styles{"watercolor", "sketch", "photorealistic", "oil painting"};
};

/// Throws Error(InvalidArgument) naming the first out-of-vocabulary field.
void validate_style(const StyleParams& style, const StyleVocabulary& vocabulary = {});

/// "a landscape garden in summer at noon, watercolor style".
std::string background_prompt(const StyleParams& style);

struct InstanceRequest {
  std::string name;
  std::string species;
  PlantCategory category = PlantCategory::Tree;
  std::vector<std::string> attributes;
  Box bbox;
  int z = 0;
  /// Per-instance seed derived from the plan seed and the instance name.
  std::uint64_t seed = 0;

  bool operator==(const InstanceRequest&) const = default;
};

inline constexpr double kDefaultFrozenFraction = 0.5;

/// Instance requests ordered back to front plus everything the backend needs
/// for the final pass.
struct CompositionPlan {
  Canvas canvas;
  std::vector<InstanceRequest> instances;
  StyleParams style;
  std::string background_prompt;
  std::uint64_t seed = 0;
  /// Fraction of composition steps during which plant regions stay frozen.
  double frozen_fraction = kDefaultFrozenFraction;

  bool operator==(const CompositionPlan&) const = default;
};

/// Stable sort by z descending: farthest first, ties keep input order.
void sort_back_to_front(std::vector<InstanceRequest>& instances);

std::uint64_t instance_seed(std::uint64_t plan_seed, const std::string& name) noexcept;

/// Throws Error(NameMismatch) unless layout names equal the graph node ids,
/// Error(UnknownSpecies) for species missing from the kb, and
/// Error(InvalidArgument) for a bad style or frozen_fraction outside [0, 1].
CompositionPlan plan_composition(const SceneGraph& graph, const Layout& layout,
                                 const StyleParams& style, std::uint64_t seed,
                                 const PlantKnowledgeBase& kb = PlantKnowledgeBase::builtin(),
                                 double frozen_fraction = kDefaultFrozenFraction,
                                 const StyleVocabulary& vocabulary = {});

/// Checks the invariants a received plan must hold: z non-increasing, boxes
/// inside the canvas with positive extents, unique names, frozen_fraction in
/// [0, 1]. Throws Error(InvalidArgument).
void validate_plan(const CompositionPlan& plan);

/// Wire form shared with the render worker (wire/plan.schema.json). Seeds
/// travel as decimal strings because JSON numbers lose 64-bit precision.
nlohmann::json plan_to_json(const CompositionPlan& plan);
CompositionPlan plan_from_json(const nlohmann::json& j);

nlohmann::json style_to_json(const StyleParams& style);
/// Missing fields keep their defaults. Throws Error(InvalidArgument).
StyleParams style_from_json(const nlohmann::json& j, const StyleVocabulary& vocabulary = {});

}  // namespace landsketch::illustrate
