#pragma once

#include <string>

#include "landsketch/illustrate/backend.hpp"

namespace landsketch::illustrate {

/// Client for the diffusion render worker. generate_instance calls
/// POST /v1/instance; compose sends the plan with every layer's image and
/// mask to POST /v1/render_scene, where the worker performs inversion and
/// the final frozen-region pass. encode is local (the worker inverts).
/// Transport and HTTP failures throw Error(BackendError).
class WorkerBackend final : public RenderBackend {
 public:
  explicit WorkerBackend(std::string base_url, int timeout_seconds = 300);

  InstanceResult generate_instance(const InstanceRequest& request,
                                   const CompositionPlan& plan) override;
  LatentHandle encode(const Image& image) override;
  Image compose(const ComposeRequest& request) override;
  std::string name() const override { return "worker"; }

  /// GET /healthz body.
  nlohmann::json health();

 private:
  nlohmann::json post(const std::string& path, const nlohmann::json& body);

  std::string base_url_;
  int timeout_seconds_;
};

/// Body of POST /v1/instance.
nlohmann::json instance_request_json(const InstanceRequest& request, const CompositionPlan& plan);
/// Body of POST /v1/render_scene.
nlohmann::json render_request_json(const ComposeRequest& request);

}  // namespace landsketch::illustrate
