#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "landsketch/app/pipeline.hpp"
#include "landsketch/error.hpp"

namespace landsketch::app {

/// HTTP status for an error code: 404 NotFound, 409 Precondition, 400 other
/// validation errors, 502 endpoint/backend errors, 500 otherwise.
int http_status(ErrorCode code) noexcept;

/// JSON API over a Studio:
///
///   POST /sessions                    {description}
///   GET  /sessions                    ids
///   GET  /sessions/{id}
///   POST /sessions/{id}/concretize    {text?, graph?, seed?}
///   POST /sessions/{id}/render        {layout?, style?, seed?}
///   GET  /sessions/{id}/history
///   POST /sessions/{id}/replay
///   GET  /images/{ref}                image/png
///   POST /benchmark                   {generator, seed, sample_count, wait?}
///   GET  /benchmark/{job}             status, progress, report
///   GET  /kb
///   GET  /healthz
///
/// Errors come back as {"error": code, "detail": text}.
class Service {
 public:
  explicit Service(Studio& studio);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds without serving; port 0 picks a free port. Returns the port.
  int bind(const std::string& host, int port);
  /// Serves until stop(). Call after bind().
  void listen();
  void stop();
  /// Blocks until the server accepts connections.
  void wait_until_ready();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace landsketch::app
