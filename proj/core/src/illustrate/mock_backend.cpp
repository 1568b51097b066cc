#include "landsketch/illustrate/mock_backend.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "landsketch/error.hpp"
#include "landsketch/evaluate/scene_sampler.hpp"
#include "landsketch/hash.hpp"

namespace landsketch::illustrate {
namespace {

constexpr int kTexture = 12;
constexpr int kGrain = 4;
constexpr int kTint = 12;

bool inside_ellipse(double u, double v, double cu, double cv, double ru, double rv) {
  const double du = (u - cu) / ru, dv = (v - cv) / rv;
  return du * du + dv * dv <= 1.0;
}

bool covers(PlantCategory category, double u, double v) {
  switch (category) {
    case PlantCategory::Tree:
      return inside_ellipse(u, v, 0.5, 0.38, 0.5, 0.38) || (std::abs(u - 0.5) <= 0.1 && v >= 0.6);
    case PlantCategory::Shrub:
      return inside_ellipse(u, v, 0.5, 1.0, 0.5, 1.0);
    case PlantCategory::Flower: {
      static constexpr double kCenters[5][2] = {
          {0.3, 0.3}, {0.7, 0.3}, {0.5, 0.55}, {0.3, 0.78}, {0.7, 0.78}};
      for (const auto& c : kCenters) {
        if (inside_ellipse(u, v, c[0], c[1], 0.2, 0.2)) return true;
      }
      return false;
    }
    case PlantCategory::Structure:
      return u >= 0.1 && u <= 0.9 && v >= 0.1 && v <= 0.9;
  }
  return false;
}

std::uint8_t clamp_byte(int v) { return static_cast<std::uint8_t>(std::clamp(v, 0, 255)); }

}  // namespace

std::array<std::uint8_t, 3> species_color(const std::string& species) {
  const std::uint64_t h = fnv1a64(species);
  std::array<std::uint8_t, 3> c{};
  for (int i = 0; i < 3; ++i) c[i] = static_cast<std::uint8_t>(32 + (h >> (8 * i)) % 192);
  return c;
}

Image silhouette_mask(PlantCategory category, int width, int height) {
  Image mask(width, height, 1);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      if (covers(category, (x + 0.5) / width, (y + 0.5) / height)) *mask.at(x, y) = 255;
    }
  }
  return mask;
}

InstanceResult MockBackend::generate_instance(const InstanceRequest& request,
                                              const CompositionPlan&) {
  const Box& b = request.bbox;
  if (b.width <= 0 || b.height <= 0) {
    throw Error(ErrorCode::BackendError, "empty bbox for " + request.name);
  }
  InstanceResult out{Image(b.width, b.height, 3), silhouette_mask(request.category, b.width, b.height)};
  const auto color = species_color(request.species);
  // Texture belongs to the species; the seed adds a tint and fine grain.
  std::mt19937_64 texture(fnv1a64(request.species));
  std::mt19937_64 grain(evaluate::mix_seed(seed_, request.seed));
  const std::uint64_t t = grain();
  int tint[3];
  for (int c = 0; c < 3; ++c) tint[c] = static_cast<int>((t >> (16 * c)) % (2 * kTint + 1)) - kTint;
  for (int y = 0; y < b.height; ++y) {
    for (int x = 0; x < b.width; ++x) {
      std::uint8_t* p = out.image.at(x, y);
      // Drawn for every pixel so the fields do not depend on the mask.
      const std::uint64_t r = texture(), g = grain();
      if (!*out.mask.at(x, y)) continue;
      for (int c = 0; c < 3; ++c) {
        const int n = static_cast<int>((r >> (16 * c)) % (2 * kTexture + 1)) - kTexture +
                      static_cast<int>((g >> (16 * c)) % (2 * kGrain + 1)) - kGrain;
        p[c] = clamp_byte(color[c] + tint[c] + n);
      }
    }
  }
  return out;
}

LatentHandle MockBackend::encode(const Image& image) { return {image, "pixels"}; }

Image MockBackend::background(const CompositionPlan& plan) const {
  const std::uint64_t h =
      evaluate::mix_seed(evaluate::mix_seed(seed_, plan.seed), fnv1a64(plan.background_prompt));
  const int top[3] = {static_cast<int>(110 + (h & 0x7f)), static_cast<int>(140 + ((h >> 8) & 0x5f)),
                      static_cast<int>(160 + ((h >> 16) & 0x5f))};
  const int bottom[3] = {static_cast<int>(40 + ((h >> 24) & 0x3f)),
                         static_cast<int>(70 + ((h >> 32) & 0x5f)),
                         static_cast<int>(20 + ((h >> 40) & 0x3f))};
  Image img(plan.canvas.width, plan.canvas.height, 3);
  const int span = std::max(1, plan.canvas.height - 1);
  for (int y = 0; y < img.height; ++y) {
    std::uint8_t row[3];
    for (int c = 0; c < 3; ++c) row[c] = clamp_byte(top[c] + (bottom[c] - top[c]) * y / span);
    for (int x = 0; x < img.width; ++x) {
      std::uint8_t* p = img.at(x, y);
      p[0] = row[0];
      p[1] = row[1];
      p[2] = row[2];
    }
  }
  return img;
}

Image MockBackend::compose(const ComposeRequest& request) {
  Image out = background(request.plan);
  for (const auto& layer : request.layers) {
    const Box& b = layer.request.bbox;
    const Image& src = layer.latent.data;
    if (src.width != b.width || src.height != b.height || layer.mask.width != b.width ||
        layer.mask.height != b.height) {
      throw Error(ErrorCode::BackendError, "layer size differs from bbox for " + layer.request.name);
    }
    if (b.x < 0 || b.y < 0 || b.x + b.width > out.width || b.y + b.height > out.height) {
      throw Error(ErrorCode::BackendError, "layer outside canvas: " + layer.request.name);
    }
    for (int y = 0; y < b.height; ++y) {
      for (int x = 0; x < b.width; ++x) {
        if (!*layer.mask.at(x, y)) continue;
        const std::uint8_t* s = src.at(x, y);
        std::uint8_t* d = out.at(b.x + x, b.y + y);
        d[0] = s[0];
        d[1] = s[1];
        d[2] = s[2];
      }
    }
  }
  return out;
}

std::unique_ptr<RenderBackend> make_mock_backend(std::uint64_t seed) {
  return std::make_unique<MockBackend>(seed);
}

}  // namespace landsketch::illustrate
