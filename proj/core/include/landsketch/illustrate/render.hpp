#pragma once

#include <string>
#include <vector>

#include "landsketch/illustrate/backend.hpp"

namespace landsketch::illustrate {

struct InstanceMask {
  std::string name;
  /// Canvas-sized, 0 or 255.
  Image mask;
};

struct RenderResult {
  Image image;
  /// In plan order.
  std::vector<InstanceMask> masks;
  Image composed_latent;
};

struct RenderOptions {
  /// Run the per-instance generations concurrently.
  bool parallel = true;
};

/// Runs the six composition steps: generate each instance, take its mask,
/// encode it, overlay the latents back to front into a seeded noise base
/// inside each mask, then hand everything to the backend's final pass.
/// Throws Error(BackendError) with "step N (name): cause" and
/// Error(MaskEmpty) naming a plant whose mask covers nothing.
RenderResult render_scene(const CompositionPlan& plan, RenderBackend& backend,
                          const RenderOptions& options = {});

/// Seeded RGB noise used as the composition base.
Image noise_base(Canvas canvas, std::uint64_t seed);

}  // namespace landsketch::illustrate
