#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace typogen {

/// Hex SHA-256 of a file's bytes. Throws Error("io") when unreadable.
std::string sha256_file(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

/// Writes to a temporary sibling and renames over `path` on commit(); an
/// uncommitted file is removed when the object goes away.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path);
  ~AtomicFile();
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ostream& stream() { return out_; }
  const std::filesystem::path& path() const { return path_; }
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool committed_ = false;
};

/// Provenance written next to every artifact as `<artifact>.meta.json`.
struct ArtifactMeta {
  std::string subcommand;
  std::optional<std::uint64_t> seed;
  std::vector<std::filesystem::path> inputs;
  nlohmann::json parameters = nlohmann::json::object();

  nlohmann::json to_json() const;
};

std::filesystem::path meta_path(const std::filesystem::path& artifact);

/// A set of outputs that are published together: commit_all() renames every
/// file and writes its sidecar; otherwise nothing is left behind.
class ArtifactSet {
 public:
  explicit ArtifactSet(ArtifactMeta meta) : meta_(std::move(meta)) {}

  std::ostream& open(const std::filesystem::path& path);
  ArtifactMeta& meta() { return meta_; }
  void commit_all();

 private:
  ArtifactMeta meta_;
  std::vector<std::unique_ptr<AtomicFile>> files_;
};

const char* tool_version();

}  // namespace typogen
