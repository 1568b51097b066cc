#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "landsketch/image.hpp"
#include "landsketch/model/session.hpp"

namespace landsketch::app {

/// On-disk session persistence under a data directory:
///
///   sessions/<id>.jsonl   first line {"type":"session",...}, then one
///                         {"type":"iteration","record":...} per step
///   images/<sha256>.png   content-addressed renders
///
/// Logs are only ever appended. I/O failures throw Error(StorageError);
/// unknown ids and refs throw Error(NotFound).
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path data_dir);

  const std::filesystem::path& data_dir() const noexcept { return dir_; }

  DesignSession create(const std::string& description);
  /// Rebuilds the session by replaying its log.
  DesignSession load(const std::string& id) const;
  bool exists(const std::string& id) const;
  /// Sorted ids of all sessions on disk.
  std::vector<std::string> list() const;
  /// Appends to the log and returns the stored record with its index set.
  IterationRecord append(const std::string& id, IterationRecord record);

  /// Stores the PNG encoding and returns its reference (SHA-256 hex).
  std::string put_image(const Image& image);
  std::vector<std::uint8_t> image_png(const std::string& ref) const;
  Image image(const std::string& ref) const;

  /// Exclusive per-session lock; every mutating step holds it.
  std::unique_lock<std::mutex> lock(const std::string& id);

  std::filesystem::path log_path(const std::string& id) const;

 private:
  std::filesystem::path dir_;
  std::mutex locks_mutex_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
  std::mutex image_mutex_;
};

/// Ids are 32 lowercase hex digits.
bool valid_session_id(const std::string& id);

}  // namespace landsketch::app
