#include "landsketch/illustrate/worker_backend.hpp"

#include <httplib.h>

#include "internal/url.hpp"
#include "landsketch/base64.hpp"
#include "landsketch/error.hpp"

namespace landsketch::illustrate {
namespace {

std::string png_b64(const Image& image) { return base64_encode(encode_png(image)); }

Image image_field(const nlohmann::json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_string()) {
    throw Error(ErrorCode::BackendError, std::string("worker response lacks ") + key);
  }
  try {
    return decode_png(base64_decode(body[key].get<std::string>()));
  } catch (const Error& e) {
    throw Error(ErrorCode::BackendError, std::string(key) + ": " + e.detail());
  }
}

Image to_gray(const Image& mask) {
  Image g = to_grayscale(mask);
  for (auto& p : g.pixels) p = p >= 128 ? 255 : 0;
  return g;
}

}  // namespace

nlohmann::json instance_request_json(const InstanceRequest& request, const CompositionPlan& plan) {
  return {{"name", request.name},
          {"species", request.species},
          {"category", to_string(request.category)},
          {"attributes", request.attributes},
          {"bbox", {request.bbox.x, request.bbox.y, request.bbox.width, request.bbox.height}},
          {"seed", std::to_string(request.seed)},
          {"style", style_to_json(plan.style)},
          {"canvas", {{"width", plan.canvas.width}, {"height", plan.canvas.height}}}};
}

nlohmann::json render_request_json(const ComposeRequest& request) {
  nlohmann::json body = plan_to_json(request.plan);
  nlohmann::json layers = nlohmann::json::array();
  for (const auto& l : request.layers) {
    layers.push_back({{"name", l.request.name},
                      {"image", png_b64(l.latent.data)},
                      {"mask", png_b64(l.mask)}});
  }
  body["layers"] = layers;
  return body;
}

WorkerBackend::WorkerBackend(std::string base_url, int timeout_seconds)
    : base_url_(std::move(base_url)), timeout_seconds_(timeout_seconds) {
  internal::split_url(base_url_, ErrorCode::InvalidArgument);
}

nlohmann::json WorkerBackend::post(const std::string& path, const nlohmann::json& body) {
  const auto url = internal::split_url(base_url_, ErrorCode::BackendError);
  httplib::Client client(url.origin);
  client.set_connection_timeout(10);
  client.set_read_timeout(timeout_seconds_);
  auto res = client.Post(url.path + path, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorCode::BackendError,
                path + ": " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::BackendError,
                path + ": HTTP " + std::to_string(res->status) + " " + res->body.substr(0, 300));
  }
  auto parsed = nlohmann::json::parse(res->body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object()) {
    throw Error(ErrorCode::BackendError, path + ": response is not a JSON object");
  }
  return parsed;
}

InstanceResult WorkerBackend::generate_instance(const InstanceRequest& request,
                                                const CompositionPlan& plan) {
  const auto body = post("/v1/instance", instance_request_json(request, plan));
  InstanceResult out{image_field(body, "image"), to_gray(image_field(body, "mask"))};
  if (out.image.channels == 1) {
    Image rgb(out.image.width, out.image.height, 3);
    for (std::size_t i = 0; i < out.image.pixels.size(); ++i) {
      for (int c = 0; c < 3; ++c) rgb.pixels[3 * i + c] = out.image.pixels[i];
    }
    out.image = std::move(rgb);
  }
  return out;
}

LatentHandle WorkerBackend::encode(const Image& image) { return {image, "worker-side"}; }

Image WorkerBackend::compose(const ComposeRequest& request) {
  Image image = image_field(post("/v1/render_scene", render_request_json(request)), "image");
  if (image.channels != 3) throw Error(ErrorCode::BackendError, "render_scene image is not RGB");
  return image;
}

nlohmann::json WorkerBackend::health() {
  const auto url = internal::split_url(base_url_, ErrorCode::BackendError);
  httplib::Client client(url.origin);
  client.set_connection_timeout(5);
  auto res = client.Get(url.path + "/healthz");
  if (!res || res->status != 200) throw Error(ErrorCode::BackendError, "healthz unavailable");
  auto parsed = nlohmann::json::parse(res->body, nullptr, false);
  if (parsed.is_discarded()) throw Error(ErrorCode::BackendError, "healthz body is not JSON");
  return parsed;
}

}  // namespace landsketch::illustrate
