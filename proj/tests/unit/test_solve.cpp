#include <doctest.h>

#include <cmath>

#include "landsketch/error.hpp"
#include "landsketch/evaluate/metrics.hpp"
#include "landsketch/evaluate/scene_sampler.hpp"
#include "landsketch/model/depth.hpp"
#include "landsketch/solve/layout_solver.hpp"

using namespace landsketch;
using namespace landsketch::solve;

namespace {

PlantKnowledgeBase single_tree_kb() {
  return PlantKnowledgeBase({{"tree", PlantCategory::Tree, 0.8, 300}}, 0.8);
}

SceneGraph dogwood_daisy_tulip() {
  return SceneGraph({{"dogwood", "dogwood", {"pink flowers"}},
                     {"daisy", "daisy", {}},
                     {"tulip", "tulip", {"white"}}},
                    {{"daisy", RelationKind::Bottom, "dogwood"},
                     {"tulip", RelationKind::Right, "daisy"}});
}

}  // namespace

TEST_CASE("assign_sizes examples") {
  auto kb = single_tree_kb();
  SceneGraph one({{"t", "tree", {}}}, {});
  CHECK(assign_sizes(one, kb).at("t") == Size{240, 300});

  SceneGraph deep({{"a", "tree", {}}, {"b", "tree", {}}, {"c", "tree", {}}},
                  {{"a", RelationKind::Behind, "b"}, {"b", RelationKind::Behind, "c"}});
  // 300 * 0.8^2 = 192, 192 * 0.8 = 153.6.
  CHECK(assign_sizes(deep, kb).at("a") == Size{154, 192});
  CHECK(assign_sizes(deep, kb).at("b") == Size{192, 240});

  SceneGraph unknown({{"m", "moonflower", {}}}, {});
  try {
    assign_sizes(unknown, kb);
    FAIL("expected UnknownSpecies");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownSpecies);
    CHECK(e.detail() == "moonflower");
  }
}

TEST_CASE("definitional placements") {
  const auto& kb = PlantKnowledgeBase::builtin();
  SceneGraph left({{"a", "oak", {}}, {"b", "oak", {}}}, {{"a", RelationKind::Left, "b"}});
  auto l = solve::solve(left, kb);
  const auto& a = *l.find("a");
  const auto& b = *l.find("b");
  CHECK(a.box().center_x() < b.box().center_x());
  CHECK(std::abs(a.box().center_x() - b.box().center_x()) >=
        std::abs(a.box().center_y() - b.box().center_y()));
  CHECK(intersection_area(a.box(), b.box()) == 0);

  SceneGraph behind({{"a", "oak", {}}, {"b", "oak", {}}}, {{"a", RelationKind::Behind, "b"}});
  auto d = solve::solve(behind, kb);
  const auto& da = *d.find("a");
  const auto& db = *d.find("b");
  CHECK(intersection_area(da.box(), db.box()) > 0);
  CHECK(da.z > db.z);
}

TEST_CASE("solve on the dogwood, daisy and tulip scene") {
  auto l = solve::solve(dogwood_daisy_tulip(), PlantKnowledgeBase::builtin());
  REQUIRE(l.size() == 3);
  auto rel = evaluate::extract_relations(l);
  CHECK(rel.contains({"daisy", RelationKind::Bottom, "dogwood"}));
  CHECK(rel.contains({"tulip", RelationKind::Right, "daisy"}));
  CHECK(l.find("daisy")->box().center_y() > l.find("dogwood")->box().center_y());
  CHECK(l.find("tulip")->box().center_x() > l.find("daisy")->box().center_x());
}

TEST_CASE("empty graph gives an empty layout") {
  auto l = solve::solve(SceneGraph{}, PlantKnowledgeBase::builtin());
  CHECK(l.empty());
  CHECK(l.canvas() == Canvas{});
}

TEST_CASE("contradictory axis constraints are unsatisfiable") {
  SceneGraph g({{"a", "oak", {}}, {"b", "oak", {}}, {"c", "oak", {}}},
               {{"a", RelationKind::Left, "b"}, {"b", RelationKind::Left, "c"},
                {"c", RelationKind::Left, "a"}});
  try {
    solve::solve(g, PlantKnowledgeBase::builtin());
    FAIL("expected Unsatisfiable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsatisfiable);
  }
}

TEST_CASE("solver soundness and rule conformance on random scenes") {
  const auto& kb = PlantKnowledgeBase::builtin();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto sample = evaluate::random_scene(seed, kb);
    const auto& g = sample.graph;
    auto l = solve::solve(g, kb);
    CHECK(l == solve::solve(g, kb));
    CHECK_MESSAGE(check_constraints(g, l).empty(), seed);

    auto rel = evaluate::extract_relations(l);
    for (const auto& e : g.edges()) CHECK_MESSAGE(rel.contains(e), seed);

    auto depths = derive_depths(g);
    for (const auto& e : l.elements()) {
      const auto& spec = kb.at(g.find(e.name)->species);
      // Rounding of both sides keeps w within one pixel of h * AR plus half a
      // pixel from h itself.
      CHECK(std::abs(e.width - e.height * spec.aspect_ratio) <= 1.0 + 0.5 * spec.aspect_ratio);
    }
    for (const auto& a : l.elements()) {
      for (const auto& b : l.elements()) {
        if (a.name >= b.name) continue;
        const auto& sa = kb.at(g.find(a.name)->species);
        const auto& sb = kb.at(g.find(b.name)->species);
        const double expected = sa.canonical_height / sb.canonical_height *
                                std::pow(kb.depth_scale(), depths[a.name] - depths[b.name]);
        const double actual = static_cast<double>(a.height) / b.height;
        const double slack = 0.02 * expected + expected * (1.0 / a.height + 1.0 / b.height);
        CHECK_MESSAGE(std::abs(actual - expected) <= slack, seed);
      }
    }
  }
}

TEST_CASE("check_constraints reports violations") {
  SceneGraph g({{"a", "oak", {}}, {"b", "oak", {}}}, {{"a", RelationKind::Left, "b"}});
  Layout swapped(Canvas{}, {{"a", 300, 0, 50, 50, 0}, {"b", 0, 0, 50, 50, 1}});
  CHECK_FALSE(check_constraints(g, swapped).empty());
  Layout good(Canvas{}, {{"a", 0, 0, 50, 50, 0}, {"b", 300, 0, 50, 50, 1}});
  CHECK(check_constraints(g, good).empty());

  SceneGraph d({{"a", "oak", {}}, {"b", "oak", {}}}, {{"a", RelationKind::Behind, "b"}});
  Layout apart(Canvas{}, {{"a", 0, 0, 50, 50, 1}, {"b", 300, 0, 50, 50, 0}});
  CHECK_FALSE(check_constraints(d, apart).empty());
  Layout sliver(Canvas{}, {{"a", 0, 0, 50, 50, 1}, {"b", 46, 0, 50, 50, 0}});
  CHECK_FALSE(check_constraints(d, sliver).empty());
  Layout stacked(Canvas{}, {{"a", 0, 0, 50, 50, 1}, {"b", 20, 0, 50, 50, 0}});
  CHECK(check_constraints(d, stacked).empty());
}

TEST_CASE("solver respects a non-default canvas") {
  const auto& kb = PlantKnowledgeBase::builtin();
  Canvas small{200, 120};
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto g = evaluate::random_scene(seed, kb).graph;
    auto l = solve::solve(g, kb, small);
    CHECK(l.canvas() == small);
    CHECK(check_constraints(g, l).empty());
  }
}

TEST_CASE("a pair with both a positional and a depth relation is unsatisfiable") {
  SceneGraph g({{"a", "oak", {}}, {"b", "oak", {}}},
               {{"a", RelationKind::Left, "b"}, {"b", RelationKind::Behind, "a"}});
  try {
    solve::solve(g, PlantKnowledgeBase::builtin());
    FAIL("expected Unsatisfiable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsatisfiable);
  }
  Layout any(Canvas{}, {{"a", 0, 0, 50, 50, 0}, {"b", 20, 0, 50, 50, 1}});
  CHECK_FALSE(check_constraints(g, any).empty());
}
