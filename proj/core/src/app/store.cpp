#include "landsketch/app/store.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "landsketch/error.hpp"
#include "landsketch/hash.hpp"
#include "landsketch/timestamp.hpp"

namespace landsketch::app {
namespace {

bool is_hex(const std::string& s, std::size_t length) {
  return s.size() == length &&
         std::all_of(s.begin(), s.end(), [](char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); });
}

std::string new_id() {
  static std::mutex mutex;
  static std::random_device device;
  static std::mt19937_64 engine((static_cast<std::uint64_t>(device()) << 32) ^ device());
  std::lock_guard lock(mutex);
  char buf[33];
  std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(engine()),
                static_cast<unsigned long long>(engine()));
  return buf;
}

void append_line(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path, std::ios::app | std::ios::binary);
  if (!out) throw Error(ErrorCode::StorageError, "cannot open " + path.string());
  out << j.dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::StorageError, "cannot write " + path.string());
}

}  // namespace

bool valid_session_id(const std::string& id) { return is_hex(id, 32); }

SessionStore::SessionStore(std::filesystem::path data_dir) : dir_(std::move(data_dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_ / "sessions", ec);
  if (!ec) std::filesystem::create_directories(dir_ / "images", ec);
  if (ec) throw Error(ErrorCode::StorageError, dir_.string() + ": " + ec.message());
}

std::filesystem::path SessionStore::log_path(const std::string& id) const {
  return dir_ / "sessions" / (id + ".jsonl");
}

DesignSession SessionStore::create(const std::string& description) {
  if (description.empty()) throw Error(ErrorCode::InvalidArgument, "empty description");
  std::string id;
  do id = new_id();
  while (std::filesystem::exists(log_path(id)));
  DesignSession session(id, description, utc_timestamp());
  append_line(log_path(id), {{"type", "session"},
                             {"id", id},
                             {"description", description},
                             {"created_at", session.created_at()}});
  return session;
}

bool SessionStore::exists(const std::string& id) const {
  return valid_session_id(id) && std::filesystem::is_regular_file(log_path(id));
}

DesignSession SessionStore::load(const std::string& id) const {
  if (!exists(id)) throw Error(ErrorCode::NotFound, "session " + id);
  std::ifstream in(log_path(id), std::ios::binary);
  if (!in) throw Error(ErrorCode::StorageError, "cannot read " + log_path(id).string());
  DesignSession session;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    // A torn final line from a crash mid-append is ignored.
    if (j.is_discarded()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw Error(ErrorCode::StorageError, log_path(id).string() + ":" + std::to_string(number));
    }
    try {
      const auto type = j.at("type").get<std::string>();
      if (type == "session") {
        session = DesignSession(j.at("id"), j.at("description"), j.at("created_at"));
      } else if (type == "iteration") {
        session.append(record_from_json(j.at("record")));
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::StorageError,
                  log_path(id).string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  if (session.id() != id) throw Error(ErrorCode::StorageError, "log header mismatch for " + id);
  return session;
}

std::vector<std::string> SessionStore::list() const {
  std::vector<std::string> ids;
  for (const auto& entry : std::filesystem::directory_iterator(dir_ / "sessions")) {
    if (entry.path().extension() != ".jsonl") continue;
    const auto id = entry.path().stem().string();
    if (valid_session_id(id)) ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

IterationRecord SessionStore::append(const std::string& id, IterationRecord record) {
  // Loading first assigns the index and rejects appends to unknown sessions.
  DesignSession session = load(id);
  const IterationRecord stored = session.append(std::move(record));
  append_line(log_path(id), {{"type", "iteration"}, {"record", record_to_json(stored)}});
  return stored;
}

std::string SessionStore::put_image(const Image& image) {
  const auto png = encode_png(image);
  const std::string ref = sha256_hex(png);
  const auto path = dir_ / "images" / (ref + ".png");
  std::lock_guard lock(image_mutex_);
  if (std::filesystem::exists(path)) return ref;
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(png.data()), static_cast<std::streamsize>(png.size()));
    if (!out) throw Error(ErrorCode::StorageError, "cannot write " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::StorageError, path.string() + ": " + ec.message());
  return ref;
}

std::vector<std::uint8_t> SessionStore::image_png(const std::string& ref) const {
  const auto path = dir_ / "images" / (ref + ".png");
  if (!is_hex(ref, 64) || !std::filesystem::is_regular_file(path)) {
    throw Error(ErrorCode::NotFound, "image " + ref);
  }
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Image SessionStore::image(const std::string& ref) const { return decode_png(image_png(ref)); }

std::unique_lock<std::mutex> SessionStore::lock(const std::string& id) {
  std::mutex* m;
  {
    std::lock_guard guard(locks_mutex_);
    auto& slot = locks_[id];
    if (!slot) slot = std::make_unique<std::mutex>();
    m = slot.get();
  }
  return std::unique_lock<std::mutex>(*m);
}

}  // namespace landsketch::app
