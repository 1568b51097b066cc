#pragma once

#include <array>
#include <cstdint>
#include <memory>

#include "landsketch/illustrate/backend.hpp"

namespace landsketch::illustrate {

/// Fill colour of a species: three bytes of its FNV-1a hash, kept in
/// [32, 223] so noise never clips. Two of n species share a colour with
/// probability below n^2 / 2^23.
std::array<std::uint8_t, 3> species_color(const std::string& species);

/// Category silhouette on a width x height grid, sampled at pixel centres.
/// tree: crown ellipse over a trunk rectangle; shrub: upper half ellipse;
/// flower: cluster of five small discs; structure: rectangle inset by 10%.
Image silhouette_mask(PlantCategory category, int width, int height);

/// Deterministic raster backend. generate_instance fills the silhouette with
/// the species colour plus a per-pixel texture seeded from the species name,
/// then adds a tint and a finer grain seeded from (backend seed, instance
/// seed); encode is the identity; compose paints the layers in the
/// given order over a vertical gradient seeded from (backend seed, plan
/// seed, background prompt), copying plant pixels verbatim.
class MockBackend final : public RenderBackend {
 public:
  explicit MockBackend(std::uint64_t seed = 0) : seed_(seed) {}

  InstanceResult generate_instance(const InstanceRequest& request,
                                   const CompositionPlan& plan) override;
  LatentHandle encode(const Image& image) override;
  Image compose(const ComposeRequest& request) override;
  std::string name() const override { return "mock"; }

  std::uint64_t seed() const noexcept { return seed_; }
  Image background(const CompositionPlan& plan) const;

 private:
  std::uint64_t seed_;
};

std::unique_ptr<RenderBackend> make_mock_backend(std::uint64_t seed = 0);

}  // namespace landsketch::illustrate
