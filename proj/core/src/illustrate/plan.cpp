#include "landsketch/illustrate/plan.hpp"

#include <algorithm>
#include <set>

#include "landsketch/error.hpp"
#include "landsketch/evaluate/scene_sampler.hpp"
#include "landsketch/hash.hpp"
#include "landsketch/model/json_io.hpp"

namespace landsketch::illustrate {
namespace {

void require_in(const std::vector<std::string>& vocabulary, const std::string& value,
                const char* field) {
  if (std::find(vocabulary.begin(), vocabulary.end(), value) == vocabulary.end()) {
    throw Error(ErrorCode::InvalidArgument, std::string(field) + ": " + value);
  }
}

std::uint64_t parse_seed(const nlohmann::json& j) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const auto text = j.get<std::string>();
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorCode::InvalidArgument, "seed: " + text);
  return v;
}

}  // namespace

void validate_style(const StyleParams& style, const StyleVocabulary& vocabulary) {
  require_in(vocabulary.seasons, style.season, "season");
  require_in(vocabulary.times, style.time_of_day, "time_of_day");
  require_in(vocabulary.styles, style.style, "style");
}

std::string background_prompt(const StyleParams& style) {
  return "a landscape garden in " + style.season + " at " + style.time_of_day + ", " +
         style.style + " style";
}

void sort_back_to_front(std::vector<InstanceRequest>& instances) {
  std::stable_sort(instances.begin(), instances.end(),
                   [](const InstanceRequest& a, const InstanceRequest& b) { return a.z > b.z; });
}

std::uint64_t instance_seed(std::uint64_t plan_seed, const std::string& name) noexcept {
  return evaluate::mix_seed(plan_seed, fnv1a64(name));
}

CompositionPlan plan_composition(const SceneGraph& graph, const Layout& layout,
                                 const StyleParams& style, std::uint64_t seed,
                                 const PlantKnowledgeBase& kb, double frozen_fraction,
                                 const StyleVocabulary& vocabulary) {
  validate_style(style, vocabulary);
  if (!(frozen_fraction >= 0.0 && frozen_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "frozen_fraction outside [0, 1]");
  }
  std::string mismatch;
  for (const auto& e : layout.elements()) {
    if (!graph.find(e.name)) mismatch += " extra:" + e.name;
  }
  for (const auto& n : graph.nodes()) {
    if (!layout.find(n.id)) mismatch += " missing:" + n.id;
  }
  if (!mismatch.empty()) throw Error(ErrorCode::NameMismatch, mismatch.substr(1));

  CompositionPlan plan;
  plan.canvas = layout.canvas();
  plan.style = style;
  plan.background_prompt = background_prompt(style);
  plan.seed = seed;
  plan.frozen_fraction = frozen_fraction;
  // Layout order is the input order for ties.
  for (const auto& e : layout.elements()) {
    const SceneNode& node = *graph.find(e.name);
    InstanceRequest r;
    r.name = e.name;
    r.species = node.species;
    r.category = kb.at(node.species).category;
    r.attributes = node.attributes;
    r.bbox = e.box();
    r.z = e.z;
    r.seed = instance_seed(seed, e.name);
    plan.instances.push_back(std::move(r));
  }
  sort_back_to_front(plan.instances);
  return plan;
}

void validate_plan(const CompositionPlan& plan) {
  validate_canvas(plan.canvas);
  if (!(plan.frozen_fraction >= 0.0 && plan.frozen_fraction <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "frozen_fraction outside [0, 1]");
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < plan.instances.size(); ++i) {
    const auto& r = plan.instances[i];
    if (!names.insert(r.name).second) throw Error(ErrorCode::InvalidArgument, "duplicate " + r.name);
    if (i > 0 && plan.instances[i - 1].z < r.z) {
      throw Error(ErrorCode::InvalidArgument, "instances not ordered back to front at " + r.name);
    }
    const Box& b = r.bbox;
    if (b.width <= 0 || b.height <= 0 || b.x < 0 || b.y < 0 ||
        b.x + b.width > plan.canvas.width || b.y + b.height > plan.canvas.height) {
      throw Error(ErrorCode::InvalidArgument, "bbox of " + r.name);
    }
  }
}

nlohmann::json style_to_json(const StyleParams& style) {
  return {{"season", style.season}, {"time_of_day", style.time_of_day}, {"style", style.style}};
}

StyleParams style_from_json(const nlohmann::json& j, const StyleVocabulary& vocabulary) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "style must be an object");
  StyleParams s;
  s.season = j.value("season", s.season);
  s.time_of_day = j.value("time_of_day", s.time_of_day);
  s.style = j.value("style", s.style);
  validate_style(s, vocabulary);
  return s;
}

nlohmann::json plan_to_json(const CompositionPlan& plan) {
  nlohmann::json instances = nlohmann::json::array();
  for (const auto& r : plan.instances) {
    instances.push_back({{"name", r.name},
                         {"species", r.species},
                         {"category", to_string(r.category)},
                         {"attributes", r.attributes},
                         {"bbox", {r.bbox.x, r.bbox.y, r.bbox.width, r.bbox.height}},
                         {"z", r.z},
                         {"seed", std::to_string(r.seed)}});
  }
  return {{"canvas", plan.canvas},
          {"instances", instances},
          {"style", style_to_json(plan.style)},
          {"background_prompt", plan.background_prompt},
          {"seed", std::to_string(plan.seed)},
          {"frozen_fraction", plan.frozen_fraction}};
}

CompositionPlan plan_from_json(const nlohmann::json& j) {
  CompositionPlan plan;
  try {
    plan.canvas = j.at("canvas").get<Canvas>();
    // Vocabulary is the sender's business; only the shape is checked here.
    const auto& st = j.at("style");
    plan.style = {st.at("season").get<std::string>(), st.at("time_of_day").get<std::string>(),
                  st.at("style").get<std::string>()};
    plan.background_prompt = j.at("background_prompt").get<std::string>();
    plan.seed = parse_seed(j.at("seed"));
    plan.frozen_fraction = j.value("frozen_fraction", kDefaultFrozenFraction);
    for (const auto& ij : j.at("instances")) {
      InstanceRequest r;
      r.name = ij.at("name").get<std::string>();
      r.species = ij.at("species").get<std::string>();
      r.category = category_from_string(ij.at("category").get<std::string>());
      r.attributes = ij.value("attributes", std::vector<std::string>{});
      const auto& b = ij.at("bbox");
      if (!b.is_array() || b.size() != 4) throw Error(ErrorCode::InvalidArgument, "bbox of " + r.name);
      r.bbox = {b[0].get<int>(), b[1].get<int>(), b[2].get<int>(), b[3].get<int>()};
      r.z = ij.at("z").get<int>();
      r.seed = parse_seed(ij.at("seed"));
      plan.instances.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("plan: ") + e.what());
  }
  validate_plan(plan);
  return plan;
}

}  // namespace landsketch::illustrate
