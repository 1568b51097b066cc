#include "landsketch/illustrate/render.hpp"

#include <future>
#include <random>

#include "landsketch/error.hpp"

namespace landsketch::illustrate {
namespace {

[[noreturn]] void backend_failure(int step, const char* what, const std::string& cause) {
  throw Error(ErrorCode::BackendError,
              "step " + std::to_string(step) + " (" + what + "): " + cause);
}

// Runs `f`, converting anything it throws into a BackendError for `step`.
template <typename F>
auto at_step(int step, const char* what, const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    backend_failure(step, what, name + ": " + std::string(to_string(e.code())) + ": " + e.detail());
  } catch (const std::exception& e) {
    backend_failure(step, what, name + ": " + e.what());
  }
}

void check_dims(const Image& img, const Box& b, int channels, int step, const char* what,
                const std::string& name) {
  if (img.width != b.width || img.height != b.height || img.channels != channels ||
      img.pixels.size() != static_cast<std::size_t>(b.width) * b.height * channels) {
    backend_failure(step, what,
                    name + ": expected " + std::to_string(b.width) + "x" + std::to_string(b.height) +
                        "x" + std::to_string(channels) + ", got " + std::to_string(img.width) + "x" +
                        std::to_string(img.height) + "x" + std::to_string(img.channels));
  }
}

}  // namespace

Image noise_base(Canvas canvas, std::uint64_t seed) {
  Image img(canvas.width, canvas.height, 3);
  std::mt19937_64 engine(seed);
  for (std::size_t i = 0; i < img.pixels.size(); i += 3) {
    const std::uint64_t r = engine();
    img.pixels[i] = static_cast<std::uint8_t>(r);
    img.pixels[i + 1] = static_cast<std::uint8_t>(r >> 8);
    img.pixels[i + 2] = static_cast<std::uint8_t>(r >> 16);
  }
  return img;
}

RenderResult render_scene(const CompositionPlan& plan, RenderBackend& backend,
                          const RenderOptions& options) {
  validate_plan(plan);
  const auto& instances = plan.instances;

  // Step 1. Results are gathered by index, so completion order is irrelevant.
  std::vector<InstanceResult> generated(instances.size());
  auto generate = [&](std::size_t i) {
    return at_step(1, "generate_instance", instances[i].name,
                   [&] { return backend.generate_instance(instances[i], plan); });
  };
  if (options.parallel && instances.size() > 1) {
    std::vector<std::future<InstanceResult>> pending;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      pending.push_back(std::async(std::launch::async, generate, i));
    }
    std::exception_ptr first;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      try {
        generated[i] = pending[i].get();
      } catch (...) {
        if (!first) first = std::current_exception();
      }
    }
    if (first) std::rethrow_exception(first);
  } else {
    for (std::size_t i = 0; i < instances.size(); ++i) generated[i] = generate(i);
  }

  // Steps 2 and 3.
  ComposeRequest compose{plan, {}, {}};
  RenderResult result;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& r = instances[i];
    auto& g = generated[i];
    check_dims(g.image, r.bbox, 3, 1, "generate_instance", r.name);
    check_dims(g.mask, r.bbox, 1, 2, "mask", r.name);
    bool any = false;
    for (auto& m : g.mask.pixels) {
      m = m ? 255 : 0;
      any = any || m;
    }
    if (!any) throw Error(ErrorCode::MaskEmpty, r.name);

    LatentHandle latent = at_step(3, "encode", r.name, [&] { return backend.encode(g.image); });
    check_dims(latent.data, r.bbox, 3, 3, "encode", r.name);

    Image full(plan.canvas.width, plan.canvas.height, 1);
    for (int y = 0; y < r.bbox.height; ++y) {
      for (int x = 0; x < r.bbox.width; ++x) *full.at(r.bbox.x + x, r.bbox.y + y) = *g.mask.at(x, y);
    }
    result.masks.push_back({r.name, std::move(full)});
    compose.layers.push_back({r, std::move(latent), std::move(g.mask)});
  }

  // Steps 4 and 5: back to front, later layers overwrite earlier ones.
  compose.composed_latent = noise_base(plan.canvas, plan.seed);
  for (const auto& layer : compose.layers) {
    const Box& b = layer.request.bbox;
    for (int y = 0; y < b.height; ++y) {
      for (int x = 0; x < b.width; ++x) {
        if (!*layer.mask.at(x, y)) continue;
        const std::uint8_t* s = layer.latent.data.at(x, y);
        std::uint8_t* d = compose.composed_latent.at(b.x + x, b.y + y);
        d[0] = s[0];
        d[1] = s[1];
        d[2] = s[2];
      }
    }
  }

  // Step 6.
  result.image = at_step(6, "compose", "scene", [&] { return backend.compose(compose); });
  if (result.image.width != plan.canvas.width || result.image.height != plan.canvas.height ||
      result.image.channels != 3) {
    backend_failure(6, "compose", "image size differs from canvas");
  }
  result.composed_latent = std::move(compose.composed_latent);
  return result;
}

}  // namespace landsketch::illustrate
