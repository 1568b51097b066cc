#include "landsketch/evaluate/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "landsketch/error.hpp"

namespace landsketch::evaluate {
namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(4);
  out << v;
  return out.str();
}

void require_same_names(const Layout& gen, const Layout& gt) {
  std::set<std::string> a, b;
  for (const auto& e : gen.elements()) a.insert(e.name);
  for (const auto& e : gt.elements()) b.insert(e.name);
  if (a == b) return;
  std::string diff;
  for (const auto& n : b)
    if (!a.count(n)) diff += " missing:" + n;
  for (const auto& n : a)
    if (!b.count(n)) diff += " extra:" + n;
  throw Error(ErrorCode::NameMismatch, diff.empty() ? "names differ" : diff.substr(1));
}

void require_graph_names(const Layout& gen, const SceneGraph& graph) {
  std::set<std::string> a, b;
  for (const auto& e : gen.elements()) a.insert(e.name);
  for (const auto& n : graph.nodes()) b.insert(n.id);
  if (a == b) return;
  std::string diff;
  for (const auto& n : b)
    if (!a.count(n)) diff += " missing:" + n;
  for (const auto& n : a)
    if (!b.count(n)) diff += " extra:" + n;
  throw Error(ErrorCode::NameMismatch, diff.substr(1));
}

}  // namespace

void MetricConfig::validate() const {
  if (!(theta_aspect > 0) || !(theta_area > 0) || sample_count < 0) {
    throw Error(ErrorCode::InvalidArgument, "metric thresholds must be positive");
  }
}

AspectRatioResult metric_aspect_ratio(const Layout& gen, const Layout& gt,
                                      const MetricConfig& cfg) {
  cfg.validate();
  require_same_names(gen, gt);
  AspectRatioResult result;
  for (const auto& truth : gt.elements()) {
    const PlacedElement& made = *gen.find(truth.name);
    const double err = std::abs(truth.aspect_ratio() - made.aspect_ratio());
    result.errors[truth.name] = err;
    if (!(err < cfg.theta_aspect)) {
      result.pass = false;
      result.failures.push_back(truth.name + ": aspect error " + fmt(err));
    }
  }
  return result;
}

MetricResult metric_relative_areas(const Layout& gen, const Layout& gt, const MetricConfig& cfg) {
  cfg.validate();
  require_same_names(gen, gt);
  MetricResult result;
  const auto& els = gt.elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    for (std::size_t j = i + 1; j < els.size(); ++j) {
      const double truth = static_cast<double>(els[i].box().area()) / els[j].box().area();
      const double made = static_cast<double>(gen.find(els[i].name)->box().area()) /
                          gen.find(els[j].name)->box().area();
      const double rel = std::abs(made - truth) / truth;
      if (!(rel < cfg.theta_area)) {
        result.pass = false;
        result.failures.push_back(els[i].name + "/" + els[j].name + ": area ratio error " +
                                  fmt(rel));
      }
    }
  }
  return result;
}

bool RelationSet::contains(const SceneEdge& edge) const {
  for (const auto& t : triples) {
    if (t == edge) return true;
    if (t.source == edge.target && t.target == edge.source &&
        t.relation == inverse(edge.relation)) {
      return true;
    }
  }
  return false;
}

RelationSet extract_relations(const Layout& layout) {
  RelationSet set;
  const auto& els = layout.elements();
  for (std::size_t i = 0; i < els.size(); ++i) {
    for (std::size_t j = i + 1; j < els.size(); ++j) {
      set.triples.push_back({els[i].name, relation_of(els[i], els[j]), els[j].name});
    }
  }
  return set;
}

MetricResult metric_relative_positions(const Layout& gen, const SceneGraph& graph) {
  require_graph_names(gen, graph);
  const RelationSet found = extract_relations(gen);
  MetricResult result;
  for (const auto& edge : graph.edges()) {
    if (!found.contains(edge)) {
      result.pass = false;
      result.failures.push_back("<" + edge.source + ", " + std::string(to_string(edge.relation)) +
                                ", " + edge.target + "> not found");
    }
  }
  return result;
}

PerspectiveResult metric_perspective(const Layout& gen, const SceneGraph& graph,
                                     const PlantKnowledgeBase& kb) {
  require_graph_names(gen, graph);
  auto canonical_area = [&](const std::string& id) {
    const PlantSpec& spec = kb.at(graph.find(id)->species);
    return spec.aspect_ratio * spec.canonical_height * spec.canonical_height;
  };
  PerspectiveResult result;
  for (const auto& edge : graph.edges()) {
    if (!is_depth(edge.relation)) continue;
    PairPerspective pair;
    pair.a = edge.source;
    pair.b = edge.target;
    pair.z_relation = edge.relation;
    pair.sr_gt = canonical_area(edge.source) / canonical_area(edge.target);
    pair.sr_gen = static_cast<double>(gen.find(edge.source)->box().area()) /
                  static_cast<double>(gen.find(edge.target)->box().area());
    pair.pass = edge.relation == RelationKind::InFrontOf ? pair.sr_gt < pair.sr_gen
                                                         : pair.sr_gt > pair.sr_gen;
    if (!pair.pass) {
      result.pass = false;
      result.failures.push_back(pair.a + " " + std::string(to_string(pair.z_relation)) + " " +
                                pair.b + ": SR_gt " + fmt(pair.sr_gt) + " vs SR_gen " +
                                fmt(pair.sr_gen));
    }
    result.pairs.push_back(std::move(pair));
  }
  return result;
}

}  // namespace landsketch::evaluate
