#include <doctest.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <fstream>
#include <set>

#include "landsketch/base64.hpp"
#include "landsketch/error.hpp"
#include "landsketch/evaluate/scene_sampler.hpp"
#include "landsketch/evaluate/ssim.hpp"
#include "landsketch/illustrate/render.hpp"
#include "landsketch/illustrate/worker_backend.hpp"
#include "landsketch/model/json_io.hpp"
#include "landsketch/solve/layout_solver.hpp"
#include "support/generators.hpp"
#include "support/painter.hpp"
#include "support/stub_server.hpp"

using namespace landsketch;
using namespace landsketch::illustrate;
using landsketch::testing::painter_reference;
using landsketch::testing::three_overlapping;

namespace {

const std::filesystem::path kFixtures = LANDSKETCH_FIXTURE_DIR;

nlohmann::json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

std::vector<std::string> order_of(const CompositionPlan& plan) {
  std::vector<std::string> names;
  for (const auto& r : plan.instances) names.push_back(r.name);
  return names;
}

SceneGraph dogwood_graph() {
  return SceneGraph({{"daisy", "daisy", {}},
                     {"dogwood", "dogwood", {"pink flowers"}},
                     {"tulip", "tulip", {"white flowers"}}},
                    {{"daisy", RelationKind::Bottom, "dogwood"},
                     {"tulip", RelationKind::Right, "daisy"}});
}

// Wraps the mock and lets a test corrupt one step.
class Faulty final : public RenderBackend {
 public:
  enum class Fault { None, Throw, EmptyMask, WrongMaskSize, WrongImageSize };
  Fault fault = Fault::None;
  std::string target;
  MockBackend inner{0};
  std::atomic<int> calls{0};

  InstanceResult generate_instance(const InstanceRequest& r, const CompositionPlan& p) override {
    ++calls;
    auto out = inner.generate_instance(r, p);
    if (r.name != target) return out;
    switch (fault) {
      case Fault::Throw: throw std::runtime_error("CUDA out of memory");
      case Fault::EmptyMask: std::fill(out.mask.pixels.begin(), out.mask.pixels.end(), 0); break;
      case Fault::WrongMaskSize: out.mask = Image(1, 1, 1, 255); break;
      case Fault::WrongImageSize: out.image = Image(2, 2, 3); break;
      case Fault::None: break;
    }
    return out;
  }
  LatentHandle encode(const Image& image) override { return inner.encode(image); }
  Image compose(const ComposeRequest& r) override { return inner.compose(r); }
  std::string name() const override { return "faulty"; }
};

}  // namespace

TEST_CASE("plan_composition orders back to front") {
  auto [g, l] = three_overlapping({0, 2, 1});
  auto plan = plan_composition(g, l, {}, 9);
  CHECK(order_of(plan) == std::vector<std::string>{"boxwood", "tulip", "oak"});
  CHECK(plan.frozen_fraction == 0.5);
  CHECK(plan.background_prompt == "a landscape garden in summer at noon, watercolor style");
  CHECK(plan.canvas == l.canvas());
  CHECK(plan.instances[0].category == PlantCategory::Shrub);
  CHECK(plan.instances[0].seed == instance_seed(9, "boxwood"));
  CHECK(plan.instances[0].seed != plan.instances[1].seed);
  CHECK(plan_composition(g, l, {}, 9) == plan);
  CHECK(plan_composition(g, l, {}, 10).instances[0].seed != plan.instances[0].seed);
}

TEST_CASE("element order does not affect the plan") {
  auto [g, base] = three_overlapping({2, 0, 1});
  auto elements = base.elements();
  std::sort(elements.begin(), elements.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  std::optional<CompositionPlan> first;
  int permutations = 0;
  do {
    auto plan = plan_composition(g, Layout(base.canvas(), elements), {}, 3);
    if (!first) first = plan;
    CHECK(plan == *first);
    ++permutations;
  } while (std::next_permutation(elements.begin(), elements.end(),
                                 [](const auto& a, const auto& b) { return a.name < b.name; }));
  CHECK(permutations == 6);
  CHECK(order_of(*first) == std::vector<std::string>{"oak", "tulip", "boxwood"});
}

TEST_CASE("equal z keeps input order") {
  std::vector<InstanceRequest> rs;
  for (const char* n : {"c", "a", "d", "b"}) rs.push_back({n, "oak", PlantCategory::Tree, {}, {0, 0, 1, 1}, 0, 0});
  sort_back_to_front(rs);
  std::vector<std::string> names;
  for (const auto& r : rs) names.push_back(r.name);
  CHECK(names == std::vector<std::string>{"c", "a", "d", "b"});

  rs[1].z = 1;
  rs[3].z = 1;
  sort_back_to_front(rs);
  names.clear();
  for (const auto& r : rs) names.push_back(r.name);
  CHECK(names == std::vector<std::string>{"a", "b", "c", "d"});
}

TEST_CASE("plan_composition errors") {
  auto [g, l] = three_overlapping({0, 1, 2});
  SceneGraph fewer({{"oak", "oak", {}}, {"boxwood", "boxwood", {}}, {"rose", "rose", {}}}, {});
  try {
    plan_composition(fewer, l, {}, 0);
    FAIL("expected NameMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NameMismatch);
    CHECK(e.detail() == "extra:tulip missing:rose");
  }
  StyleParams bad;
  bad.season = "monsoon";
  CHECK_THROWS_AS(plan_composition(g, l, bad, 0), Error);
  CHECK_THROWS_AS(plan_composition(g, l, {}, 0, PlantKnowledgeBase::builtin(), 1.5), Error);
  SceneGraph unknown({{"oak", "oak", {}}, {"boxwood", "boxwood", {}}, {"tulip", "moonflower", {}}}, {});
  CHECK_THROWS_AS(plan_composition(unknown, l, {}, 0), Error);
}

TEST_CASE("style vocabulary") {
  for (const auto& season : StyleVocabulary{}.seasons) {
    StyleParams s;
    s.season = season;
    CHECK_NOTHROW(validate_style(s));
  }
  StyleParams s;
  s.style = "pixel art";
  CHECK_THROWS_AS(validate_style(s), Error);
  StyleVocabulary custom;
  custom.styles.push_back("pixel art");
  CHECK_NOTHROW(validate_style(s, custom));
  CHECK(style_from_json(style_to_json(StyleParams{})) == StyleParams{});
  CHECK_THROWS_AS(style_from_json(style_to_json(s)), Error);
}

TEST_CASE("plan JSON round trip and golden wire form") {
  auto layout = solve::solve(dogwood_graph(), PlantKnowledgeBase::builtin());
  StyleParams style{"spring", "morning", "watercolor"};
  auto plan = plan_composition(dogwood_graph(), layout, style, 42);
  auto j = plan_to_json(plan);
  CHECK(plan_from_json(j) == plan);
  CHECK(j == read_json(kFixtures / "wire" / "plan_dogwood.json"));
  CHECK(j["instances"][0]["seed"].is_string());
  CHECK(instance_request_json(plan.instances[0], plan) ==
        read_json(kFixtures / "wire" / "instance_request.json"));

  CompositionPlan big = plan;
  big.seed = 18446744073709551615ULL;
  CHECK(plan_from_json(plan_to_json(big)).seed == big.seed);

  auto unordered = j;
  std::swap(unordered["instances"][0], unordered["instances"][2]);
  CHECK_THROWS_AS(plan_from_json(unordered), Error);
  auto outside = j;
  outside["instances"][0]["bbox"] = {500, 0, 100, 10};
  CHECK_THROWS_AS(plan_from_json(outside), Error);
  auto bad_seed = j;
  bad_seed["seed"] = "12x";
  CHECK_THROWS_AS(plan_from_json(bad_seed), Error);
  CHECK_THROWS_AS(plan_from_json(nlohmann::json::object()), Error);
}

TEST_CASE("mock instances are deterministic and species-coloured") {
  MockBackend backend(5);
  auto [g, l] = three_overlapping({0, 1, 2});
  auto plan = plan_composition(g, l, {}, 1);
  const auto& r = plan.instances[0];
  auto a = backend.generate_instance(r, plan);
  auto b = backend.generate_instance(r, plan);
  CHECK(a.image == b.image);
  CHECK(a.mask == b.mask);
  CHECK(a.image.width == r.bbox.width);
  CHECK(a.mask.width == a.image.width);
  CHECK(a.mask.height == a.image.height);
  CHECK(MockBackend(6).generate_instance(r, plan).image != a.image);
  auto other = r;
  other.seed += 1;
  CHECK(backend.generate_instance(other, plan).image != a.image);
  CHECK(backend.encode(a.image).data == a.image);

  std::set<std::array<std::uint8_t, 3>> colors;
  const auto& kb = PlantKnowledgeBase::builtin();
  for (const auto& s : kb.species()) colors.insert(species_color(s));
  CHECK(colors.size() == kb.species().size());
}

TEST_CASE("silhouettes cover at least 30% of the box") {
  const double ars[] = {0.3, 0.45, 0.8, 1.0, 1.3, 2.2};
  const int heights[] = {8, 13, 40, 97, 300};
  for (auto cat : {PlantCategory::Tree, PlantCategory::Shrub, PlantCategory::Flower,
                   PlantCategory::Structure}) {
    for (double ar : ars) {
      for (int h : heights) {
        const int w = std::max(1, static_cast<int>(std::lround(h * ar)));
        auto m = silhouette_mask(cat, w, h);
        const double covered =
            static_cast<double>(std::count(m.pixels.begin(), m.pixels.end(), 255)) / (w * h);
        CHECK_MESSAGE(covered >= 0.30, to_string(cat), " ", w, "x", h);
        CHECK(std::count(m.pixels.begin(), m.pixels.end(), 0) + std::count(m.pixels.begin(), m.pixels.end(), 255) ==
              static_cast<long>(m.pixels.size()));
      }
    }
  }
  // Analytic areas: half ellipse pi/4, inset rectangle 0.8^2.
  auto frac = [](const Image& m) {
    return static_cast<double>(std::count(m.pixels.begin(), m.pixels.end(), 255)) / m.pixels.size();
  };
  CHECK(frac(silhouette_mask(PlantCategory::Shrub, 400, 400)) == doctest::Approx(M_PI / 4).epsilon(0.01));
  CHECK(frac(silhouette_mask(PlantCategory::Structure, 400, 400)) == doctest::Approx(0.64).epsilon(0.01));
  for (auto cat : {PlantCategory::Tree, PlantCategory::Shrub, PlantCategory::Flower, PlantCategory::Structure}) {
    CHECK(frac(silhouette_mask(cat, 1, 1)) == 1.0);
  }
}

TEST_CASE("front plant occludes the one behind it") {
  SceneGraph g({{"a", "oak", {}}, {"b", "boxwood", {}}}, {{"a", RelationKind::Behind, "b"}});
  auto layout = solve::solve(g, PlantKnowledgeBase::builtin());
  auto plan = plan_composition(g, layout, {}, 77);
  MockBackend backend(3);
  auto result = render_scene(plan, backend);
  auto inst_b = backend.generate_instance(plan.instances[1], plan);
  REQUIRE(plan.instances[1].name == "b");

  const auto& ma = result.masks[0].mask;
  const auto& mb = result.masks[1].mask;
  const Box& bb = plan.instances[1].bbox;
  int overlap = 0;
  for (int y = 0; y < plan.canvas.height; ++y) {
    for (int x = 0; x < plan.canvas.width; ++x) {
      if (!*ma.at(x, y) || !*mb.at(x, y)) continue;
      ++overlap;
      const std::uint8_t* want = inst_b.image.at(x - bb.x, y - bb.y);
      const std::uint8_t* got = result.image.at(x, y);
      REQUIRE(std::equal(want, want + 3, got));
    }
  }
  CHECK(overlap > 0);
  CHECK(result.image == painter_reference(plan, backend));
}

TEST_CASE("occlusion over every ordering of three overlapping plants") {
  std::array<int, 3> z{0, 1, 2};
  int orderings = 0;
  do {
    auto [g, l] = three_overlapping(z);
    auto plan = plan_composition(g, l, {}, 11);
    MockBackend backend(0);
    auto result = render_scene(plan, backend);
    CHECK(result.image == painter_reference(plan, backend));
    int triple = 0;
    for (std::size_t i = 0; i < result.masks[0].mask.pixels.size(); ++i) {
      triple += result.masks[0].mask.pixels[i] && result.masks[1].mask.pixels[i] &&
                result.masks[2].mask.pixels[i];
    }
    CHECK(triple > 0);
    ++orderings;
  } while (std::next_permutation(z.begin(), z.end()));
  CHECK(orderings == 6);
}

TEST_CASE("occlusion property on random layouts") {
  landsketch::testing::Gen gen(4242);
  const auto& kb = PlantKnowledgeBase::builtin();
  const auto species = kb.species();
  for (int trial = 0; trial < 40; ++trial) {
    const int n = gen.between(1, 6);
    auto layout = landsketch::testing::random_layout(gen, Canvas{96, 80}, n);
    std::vector<SceneNode> nodes;
    for (const auto& e : layout.elements()) {
      nodes.push_back({e.name, species[gen.between(0, static_cast<int>(species.size()) - 1)], {}});
    }
    SceneGraph g(nodes, {});
    auto plan = plan_composition(g, layout, {}, gen.bits());
    MockBackend backend(gen.bits());
    auto result = render_scene(plan, backend, {trial % 2 == 0});
    CHECK_MESSAGE(result.image == painter_reference(plan, backend), trial);

    // Latent composition: masked areas hold the frontmost latent, the rest
    // is the seeded noise base.
    auto noise = noise_base(plan.canvas, plan.seed);
    for (std::size_t p = 0; p < static_cast<std::size_t>(plan.canvas.width * plan.canvas.height); ++p) {
      bool covered = false;
      for (const auto& m : result.masks) covered = covered || m.mask.pixels[p];
      const auto* want = covered ? result.image.pixels.data() + 3 * p : noise.pixels.data() + 3 * p;
      CHECK(std::equal(want, want + 3, result.composed_latent.pixels.data() + 3 * p));
    }
  }
}

TEST_CASE("reversing z changes only pixels where masks intersect") {
  auto [g, l] = three_overlapping({0, 1, 2});
  auto [g2, reversed] = three_overlapping({2, 1, 0});
  MockBackend backend(8);
  auto front = render_scene(plan_composition(g, l, {}, 5), backend);
  auto back = render_scene(plan_composition(g2, reversed, {}, 5), backend);
  int changed = 0;
  for (int y = 0; y < l.canvas().height; ++y) {
    for (int x = 0; x < l.canvas().width; ++x) {
      int cover = 0;
      for (const auto& m : front.masks) cover += *m.mask.at(x, y) != 0;
      const bool differs = !std::equal(front.image.at(x, y), front.image.at(x, y) + 3, back.image.at(x, y));
      if (differs) {
        ++changed;
        CHECK(cover >= 2);
      }
    }
  }
  CHECK(changed > 0);
}

TEST_CASE("render determinism") {
  auto layout = solve::solve(dogwood_graph(), PlantKnowledgeBase::builtin());
  auto plan = plan_composition(dogwood_graph(), layout, {}, 2024);
  auto a = render_scene(plan, *make_mock_backend(1));
  auto b = render_scene(plan, *make_mock_backend(1), {false});
  CHECK(encode_png(a.image) == encode_png(b.image));
  CHECK(a.image.width == 512);
  CHECK(a.masks.size() == 3);
  CHECK(render_scene(plan, *make_mock_backend(2)).image != a.image);

  CompositionPlan empty;
  empty.background_prompt = background_prompt(empty.style);
  MockBackend backend(1);
  auto bg = render_scene(empty, backend);
  CHECK(bg.image == backend.background(empty));
  CHECK(bg.masks.empty());
  CHECK(render_scene(empty, backend).image == bg.image);
  empty.seed = 1;
  CHECK(render_scene(empty, backend).image != bg.image);
}

TEST_CASE("backend failures are reported with their step") {
  auto [g, l] = three_overlapping({0, 1, 2});
  auto plan = plan_composition(g, l, {}, 0);
  Faulty backend;
  backend.target = "boxwood";

  backend.fault = Faulty::Fault::EmptyMask;
  try {
    render_scene(plan, backend);
    FAIL("expected MaskEmpty");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MaskEmpty);
    CHECK(e.detail() == "boxwood");
  }

  backend.fault = Faulty::Fault::Throw;
  try {
    render_scene(plan, backend);
    FAIL("expected BackendError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BackendError);
    CHECK(e.detail() == "step 1 (generate_instance): boxwood: CUDA out of memory");
  }

  backend.fault = Faulty::Fault::WrongMaskSize;
  try {
    render_scene(plan, backend, {false});
    FAIL("expected BackendError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BackendError);
    CHECK(e.detail().rfind("step 2 (mask): boxwood", 0) == 0);
  }

  backend.fault = Faulty::Fault::WrongImageSize;
  CHECK_THROWS_AS(render_scene(plan, backend), Error);

  auto unordered = plan;
  std::reverse(unordered.instances.begin(), unordered.instances.end());
  CHECK_THROWS_AS(render_scene(unordered, backend), Error);
}

TEST_CASE("base64") {
  const std::string text = "landscape";
  for (std::size_t n = 0; n <= text.size(); ++n) {
    std::vector<std::uint8_t> bytes(text.begin(), text.begin() + static_cast<long>(n));
    CHECK(base64_decode(base64_encode(bytes)) == bytes);
  }
  CHECK(base64_encode(std::vector<std::uint8_t>{'M', 'a'}) == "TWE=");
  CHECK_THROWS_AS(base64_decode("abc"), Error);
  CHECK_THROWS_AS(base64_decode("a!!b"), Error);
}

TEST_CASE("worker backend speaks the wire protocol") {
  landsketch::testing::StubServer stub;
  MockBackend engine(0);
  std::atomic<int> instance_calls{0};
  nlohmann::json last_render;
  stub.server().Post("/v1/instance", [&](const httplib::Request& req, httplib::Response& res) {
    ++instance_calls;
    auto body = nlohmann::json::parse(req.body);
    InstanceRequest r;
    r.name = body["name"];
    r.species = body["species"];
    r.category = category_from_string(body["category"].get<std::string>());
    r.bbox = {body["bbox"][0], body["bbox"][1], body["bbox"][2], body["bbox"][3]};
    r.seed = std::stoull(body["seed"].get<std::string>());
    auto out = engine.generate_instance(r, CompositionPlan{});
    res.set_content(nlohmann::json{{"image", base64_encode(encode_png(out.image))},
                                   {"mask", base64_encode(encode_png(out.mask))}}
                        .dump(),
                    "application/json");
  });
  stub.server().Post("/v1/render_scene", [&](const httplib::Request& req, httplib::Response& res) {
    last_render = nlohmann::json::parse(req.body);
    CompositionPlan plan;
    try {
      plan = plan_from_json(last_render);
    } catch (const Error& e) {
      res.status = 422;
      res.set_content(e.detail(), "text/plain");
      return;
    }
    ComposeRequest cr{plan, {}, {}};
    for (std::size_t i = 0; i < plan.instances.size(); ++i) {
      const auto& layer = last_render["layers"][i];
      cr.layers.push_back({plan.instances[i],
                           {decode_png(base64_decode(layer["image"].get<std::string>())), ""},
                           decode_png(base64_decode(layer["mask"].get<std::string>()))});
    }
    res.set_content(nlohmann::json{{"image", base64_encode(encode_png(engine.compose(cr)))}}.dump(),
                    "application/json");
  });
  stub.server().Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"model":"stub","lora":null})", "application/json");
  });
  stub.start();

  auto [g, l] = three_overlapping({1, 0, 2});
  auto plan = plan_composition(g, l, {}, 31);
  WorkerBackend worker(stub.url());
  auto remote = render_scene(plan, worker);
  CHECK(instance_calls == 3);
  CHECK(remote.image == render_scene(plan, engine).image);
  CHECK(last_render["layers"].size() == 3);
  CHECK(last_render["layers"][0]["name"] == plan.instances[0].name);
  CHECK(worker.health()["model"] == "stub");

  // The worker rejects an unordered plan; the client surfaces it.
  ComposeRequest bad{plan, {}, {}};
  std::reverse(bad.plan.instances.begin(), bad.plan.instances.end());
  try {
    worker.compose(bad);
    FAIL("expected BackendError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BackendError);
    CHECK(e.detail().find("422") != std::string::npos);
  }

  WorkerBackend down("http://127.0.0.1:1");
  try {
    render_scene(plan, down);
    FAIL("expected BackendError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BackendError);
    CHECK(e.detail().rfind("step 1", 0) == 0);
  }
  CHECK_THROWS_AS(WorkerBackend("localhost:8000"), Error);
}

TEST_CASE("same-layout renders are more coherent than random layouts") {
  const auto& kb = PlantKnowledgeBase::builtin();
  auto scene = evaluate::random_scene(3, kb, {3, 5});
  auto layout = solve::solve(scene.graph, kb);
  MockBackend backend(0);
  std::vector<Image> same, random;
  for (std::uint64_t s = 0; s < 6; ++s) {
    same.push_back(render_scene(plan_composition(scene.graph, layout, {}, s), backend).image);
    auto other = evaluate::random_scene(100 + s, kb, {3, 5});
    random.push_back(
        render_scene(plan_composition(other.graph, solve::solve(other.graph, kb), {}, s), backend).image);
  }
  CHECK(evaluate::group_mean_ssim(same) > evaluate::group_mean_ssim(random));
}
