#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace landsketch {

enum class PlantCategory { Tree, Shrub, Flower, Structure };

std::string_view to_string(PlantCategory category) noexcept;
/// Throws Error(InvalidArgument) on an unknown name.
PlantCategory category_from_string(std::string_view text);

struct PlantSpec {
  std::string species;
  PlantCategory category = PlantCategory::Tree;
  /// width / height.
  double aspect_ratio = 1.0;
  /// Height in pixels at depth 0.
  double canonical_height = 100.0;

  bool operator==(const PlantSpec&) const = default;
};

/// Per-species proportions plus the perspective shrink factor applied per
/// depth level. Species keys are stored lowercase; lookups are
/// case-insensitive.
class PlantKnowledgeBase {
 public:
  PlantKnowledgeBase() = default;
  /// Throws Error(InvalidArgument) on duplicate species, non-positive
  /// ratios/heights or depth_scale outside (0, 1).
  PlantKnowledgeBase(std::vector<PlantSpec> entries, double depth_scale);

  /// The built-in plant table used by the CLI, service and tests.
  static const PlantKnowledgeBase& builtin();

  const PlantSpec* find(std::string_view species) const;
  /// Throws Error(UnknownSpecies).
  const PlantSpec& at(std::string_view species) const;

  double depth_scale() const noexcept { return depth_scale_; }
  const std::map<std::string, PlantSpec>& entries() const noexcept {
    return entries_;
  }
  /// Sorted species names.
  std::vector<std::string> species() const;
  bool empty() const noexcept { return entries_.empty(); }

  bool operator==(const PlantKnowledgeBase&) const = default;

 private:
  std::map<std::string, PlantSpec> entries_;
  double depth_scale_ = 0.8;
};

std::string to_lower(std::string_view text);

}  // namespace landsketch
