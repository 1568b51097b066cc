#pragma once

#include <string>
#include <vector>

#include "landsketch/illustrate/plan.hpp"
#include "landsketch/image.hpp"

namespace landsketch::illustrate {

/// Instance image and binary mask, both sized to the request's bbox. Mask
/// pixels are 0 or 255, single channel.
struct InstanceResult {
  Image image;
  Image mask;
};

/// Opaque latent produced by encode(). The mock backend works in pixel
/// space, so `data` is the instance image itself.
struct LatentHandle {
  Image data;
  std::string backend_ref;
};

struct ComposeLayer {
  InstanceRequest request;
  LatentHandle latent;
  Image mask;
};

struct ComposeRequest {
  CompositionPlan plan;
  /// Back to front, in plan order.
  std::vector<ComposeLayer> layers;
  /// Seeded noise base with every layer's latent written into its mask.
  Image composed_latent;
};

/// Capabilities the orchestrator needs from an image generator. Same inputs
/// must give identical outputs. Implementations must tolerate concurrent
/// generate_instance calls.
class RenderBackend {
 public:
  virtual ~RenderBackend() = default;

  virtual InstanceResult generate_instance(const InstanceRequest& request,
                                           const CompositionPlan& plan) = 0;
  virtual LatentHandle encode(const Image& image) = 0;
  /// Final pass; returns an image sized to the plan canvas.
  virtual Image compose(const ComposeRequest& request) = 0;
  virtual std::string name() const = 0;
};

}  // namespace landsketch::illustrate
