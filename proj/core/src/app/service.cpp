#include "landsketch/app/service.hpp"

#include <httplib.h>

#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "landsketch/model/json_io.hpp"

namespace landsketch::app {
namespace {

struct Job {
  std::string status = "running";
  int done = 0;
  int total = 0;
  nlohmann::json report;
  nlohmann::json error;
};

void send_json(httplib::Response& res, const nlohmann::json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const Error& e) {
  send_json(res, {{"error", to_string(e.code())}, {"detail", e.detail()}}, http_status(e.code()));
}

nlohmann::json body_of(const httplib::Request& req) {
  if (req.body.empty()) return nlohmann::json::object();
  auto j = nlohmann::json::parse(req.body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
  }
  return j;
}

std::uint64_t seed_of(const nlohmann::json& j) {
  if (!j.contains("seed")) return 0;
  const auto& s = j["seed"];
  if (s.is_number_unsigned()) return s.get<std::uint64_t>();
  if (s.is_string()) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(s.get<std::string>(), &used);
      if (used == s.get<std::string>().size()) return v;
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::InvalidArgument, "seed must be a non-negative integer");
}

}  // namespace

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::Precondition: return 409;
    default: break;
  }
  switch (classify(code)) {
    case ErrorClass::Validation: return 400;
    case ErrorClass::External: return 502;
    case ErrorClass::Other: return 500;
  }
  return 500;
}

struct Service::Impl {
  Studio& studio;
  httplib::Server server;
  std::mutex jobs_mutex;
  std::map<std::string, std::shared_ptr<Job>> jobs;
  std::vector<std::thread> workers;
  std::atomic<int> next_job{1};

  explicit Impl(Studio& s) : studio(s) { routes(); }

  ~Impl() {
    for (auto& t : workers) {
      if (t.joinable()) t.join();
    }
  }

  // Runs `f` and maps exceptions onto the response.
  template <typename F>
  void guarded(httplib::Response& res, F&& f) {
    try {
      f();
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const nlohmann::json::exception& e) {
      send_error(res, Error(ErrorCode::InvalidArgument, e.what()));
    } catch (const std::exception& e) {
      send_json(res, {{"error", "Internal"}, {"detail", e.what()}}, 500);
    }
  }

  nlohmann::json job_json(const std::string& id, const Job& job) {
    nlohmann::json j = {{"job_id", id},
                        {"status", job.status},
                        {"completed", job.done},
                        {"total", job.total}};
    if (!job.report.is_null()) j["report"] = job.report;
    if (!job.error.is_null()) j["error"] = job.error;
    return j;
  }

  void routes() {
    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
      send_json(res, {{"status", "ok"}});
    });
    server.Get("/kb", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] { send_json(res, kb_to_json(studio.kb())); });
    });
    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto body = body_of(req);
        const auto id = studio.create_session(body.at("description").get<std::string>());
        send_json(res, session_to_json(studio.session(id)), 201);
      });
    });
    server.Get("/sessions", [this](const httplib::Request&, httplib::Response& res) {
      guarded(res, [&] { send_json(res, {{"sessions", studio.store().list()}}); });
    });
    server.Get(R"(/sessions/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { send_json(res, session_to_json(studio.session(req.matches[1]))); });
    });
    server.Get(R"(/sessions/([0-9a-f]+)/history)",
               [this](const httplib::Request& req, httplib::Response& res) {
                 guarded(res, [&] {
                   send_json(res, session_to_json(studio.session(req.matches[1]))["iterations"]);
                 });
               });
    server.Post(R"(/sessions/([0-9a-f]+)/concretize)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    const auto body = body_of(req);
                    ConcretizeInput in;
                    if (body.contains("text")) in.text = body["text"].get<std::string>();
                    if (body.contains("graph")) in.graph = body["graph"];
                    in.seed = seed_of(body);
                    send_json(res, record_to_json(studio.step_concretize(req.matches[1], in)));
                  });
                });
    server.Post(R"(/sessions/([0-9a-f]+)/render)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    const auto body = body_of(req);
                    RenderInput in;
                    if (body.contains("layout")) in.layout = body["layout"];
                    if (body.contains("style")) {
                      in.style = illustrate::style_from_json(body["style"], studio.config().vocabulary);
                    }
                    in.seed = seed_of(body);
                    send_json(res, record_to_json(studio.step_render(req.matches[1], in)));
                  });
                });
    server.Post(R"(/sessions/([0-9a-f]+)/replay)",
                [this](const httplib::Request& req, httplib::Response& res) {
                  guarded(res, [&] {
                    send_json(res, replay_report_to_json(studio.replay_session(req.matches[1])));
                  });
                });
    server.Get(R"(/images/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto png = studio.store().image_png(req.matches[1]);
        res.set_content(std::string(png.begin(), png.end()), "image/png");
      });
    });
    server.Post("/benchmark", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { start_benchmark(body_of(req), res); });
    });
    server.Get(R"(/benchmark/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(jobs_mutex);
      auto it = jobs.find(req.matches[1]);
      if (it == jobs.end()) {
        send_error(res, Error(ErrorCode::NotFound, "job " + std::string(req.matches[1])));
        return;
      }
      send_json(res, job_json(it->first, *it->second));
    });
  }

  void start_benchmark(const nlohmann::json& body, httplib::Response& res) {
    const auto generator = body.value("generator", std::string("oracle"));
    const auto seed = seed_of(body);
    const int samples = body.value("sample_count", 100);
    if (generator != "oracle" && generator != "llm") {
      throw Error(ErrorCode::InvalidArgument, "unknown generator: " + generator);
    }
    if (samples < 0) throw Error(ErrorCode::InvalidArgument, "sample_count must be >= 0");
    auto run = [this, generator, seed, samples](const std::shared_ptr<Job>& job) {
      auto report = run_named_benchmark(generator, seed, samples, studio.config(), studio.kb(),
                                        &studio.transport(), [this, job](int done, int total) {
                                          std::lock_guard lock(jobs_mutex);
                                          job->done = done;
                                          job->total = total;
                                        });
      return evaluate::report_to_json(report);
    };

    if (body.value("wait", false)) {
      send_json(res, run(std::make_shared<Job>()));
      return;
    }
    const auto id = std::to_string(next_job++);
    auto job = std::make_shared<Job>();
    job->total = samples;
    {
      std::lock_guard lock(jobs_mutex);
      jobs[id] = job;
      workers.emplace_back([this, job, run] {
        nlohmann::json report, error;
        try {
          report = run(job);
        } catch (const Error& e) {
          error = {{"error", to_string(e.code())}, {"detail", e.detail()}};
        } catch (const std::exception& e) {
          error = {{"error", "Internal"}, {"detail", e.what()}};
        }
        std::lock_guard lock(jobs_mutex);
        job->report = std::move(report);
        job->error = std::move(error);
        job->status = job->error.is_null() ? "done" : "failed";
      });
    }
    std::lock_guard lock(jobs_mutex);
    send_json(res, job_json(id, *job), 202);
  }
};

Service::Service(Studio& studio) : impl_(std::make_unique<Impl>(studio)) {}
Service::~Service() {
  stop();
}

int Service::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error(ErrorCode::InvalidArgument, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void Service::listen() { impl_->server.listen_after_bind(); }
void Service::stop() { impl_->server.stop(); }
void Service::wait_until_ready() { impl_->server.wait_until_ready(); }

}  // namespace landsketch::app
