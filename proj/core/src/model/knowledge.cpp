#include "landsketch/model/knowledge.hpp"

#include <algorithm>
#include <cctype>

#include "landsketch/error.hpp"

namespace landsketch {

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

std::string_view to_string(PlantCategory category) noexcept {
  switch (category) {
    case PlantCategory::Tree: return "tree";
    case PlantCategory::Shrub: return "shrub";
    case PlantCategory::Flower: return "flower";
    case PlantCategory::Structure: return "structure";
  }
  return "tree";
}

PlantCategory category_from_string(std::string_view text) {
  const std::string lower = to_lower(text);
  for (auto c : {PlantCategory::Tree, PlantCategory::Shrub, PlantCategory::Flower,
                 PlantCategory::Structure}) {
    if (lower == to_string(c)) return c;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown plant category '" + std::string(text) + "'");
}

PlantKnowledgeBase::PlantKnowledgeBase(std::vector<PlantSpec> entries, double depth_scale)
    : depth_scale_(depth_scale) {
  if (!(depth_scale > 0.0 && depth_scale < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "depth_scale must lie in (0, 1)");
  }
  for (auto& spec : entries) {
    spec.species = to_lower(spec.species);
    if (spec.species.empty()) {
      throw Error(ErrorCode::InvalidArgument, "empty species name");
    }
    if (!(spec.aspect_ratio > 0.0) || !(spec.canonical_height > 0.0)) {
      throw Error(ErrorCode::InvalidArgument,
                  "non-positive proportions for '" + spec.species + "'");
    }
    const std::string key = spec.species;
    if (!entries_.emplace(key, std::move(spec)).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate species '" + key + "'");
    }
  }
}

const PlantKnowledgeBase& PlantKnowledgeBase::builtin() {
  // Proportions are at depth 0 on a 512 px canvas. No name is a substring of
  // another, so prompt text can be checked by plain string search.
  static const PlantKnowledgeBase kb(
      {
          {"oak", PlantCategory::Tree, 1.10, 280},
          {"maple", PlantCategory::Tree, 0.95, 260},
          {"dogwood", PlantCategory::Tree, 1.05, 220},
          {"birch", PlantCategory::Tree, 0.60, 250},
          {"cypress", PlantCategory::Tree, 0.35, 270},
          {"pine", PlantCategory::Tree, 0.55, 290},
          {"boxwood", PlantCategory::Shrub, 1.30, 90},
          {"hydrangea", PlantCategory::Shrub, 1.20, 110},
          {"lavender", PlantCategory::Shrub, 1.50, 70},
          {"juniper", PlantCategory::Shrub, 0.90, 120},
          {"tulip", PlantCategory::Flower, 0.45, 60},
          {"daisy", PlantCategory::Flower, 0.90, 45},
          {"lily", PlantCategory::Flower, 0.50, 70},
          {"peony", PlantCategory::Flower, 1.00, 55},
          {"bench", PlantCategory::Structure, 2.20, 45},
          {"pavilion", PlantCategory::Structure, 1.30, 200},
      },
      0.8);
  return kb;
}

const PlantSpec* PlantKnowledgeBase::find(std::string_view species) const {
  auto it = entries_.find(to_lower(species));
  return it == entries_.end() ? nullptr : &it->second;
}

const PlantSpec& PlantKnowledgeBase::at(std::string_view species) const {
  if (const PlantSpec* spec = find(species)) return *spec;
  throw Error(ErrorCode::UnknownSpecies, std::string(species));
}

std::vector<std::string> PlantKnowledgeBase::species() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [name, spec] : entries_) out.push_back(name);
  return out;
}

}  // namespace landsketch
