#include "typogen/artifact.h"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "typogen/error.h"

namespace typogen {

namespace {

class Digest {
 public:
  Digest() : ctx_(EVP_MD_CTX_new()) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1) throw Error("digest", "sha256 unavailable");
  }
  ~Digest() { EVP_MD_CTX_free(ctx_); }
  void update(const char* data, std::size_t n) { EVP_DigestUpdate(ctx_, data, n); }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx_, md.data(), &len);
    std::string out;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
      std::snprintf(buf, sizeof buf, "%02x", md[i]);
      out += buf;
    }
    return out;
  }

 private:
  EVP_MD_CTX* ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  Digest d;
  d.update(bytes.data(), bytes.size());
  return d.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot open " + path.string());
  Digest d;
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    d.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return d.hex();
}

AtomicFile::AtomicFile(std::filesystem::path path) : path_(std::move(path)) {
  tmp_ = path_;
  tmp_ += ".partial";
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error("io", "cannot write " + path_.string());
}

AtomicFile::~AtomicFile() {
  if (committed_) return;
  out_.close();
  std::error_code ec;
  std::filesystem::remove(tmp_, ec);
}

void AtomicFile::commit() {
  out_.flush();
  if (!out_) throw Error("io", "write failed for " + path_.string());
  out_.close();
  std::error_code ec;
  std::filesystem::rename(tmp_, path_, ec);
  if (ec) throw Error("io", "cannot move output into place at " + path_.string() + ": " + ec.message());
  committed_ = true;
}

const char* tool_version() { return TYPOGEN_VERSION; }

nlohmann::json ArtifactMeta::to_json() const {
  nlohmann::json in = nlohmann::json::array();
  for (const auto& p : inputs) in.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}});
  nlohmann::json out = {{"tool", "typogen"},
                        {"version", tool_version()},
                        {"subcommand", subcommand},
                        {"seed", seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)},
                        {"inputs", in},
                        {"parameters", parameters}};
  return out;
}

std::filesystem::path meta_path(const std::filesystem::path& artifact) {
  auto p = artifact;
  p += ".meta.json";
  return p;
}

std::ostream& ArtifactSet::open(const std::filesystem::path& path) {
  files_.push_back(std::make_unique<AtomicFile>(path));
  return files_.back()->stream();
}

void ArtifactSet::commit_all() {
  const std::string meta = meta_.to_json().dump(2) + "\n";
  std::vector<std::unique_ptr<AtomicFile>> sidecars;
  for (const auto& f : files_) {
    sidecars.push_back(std::make_unique<AtomicFile>(meta_path(f->path())));
    sidecars.back()->stream() << meta;
  }
  for (auto& f : files_) f->commit();
  for (auto& s : sidecars) s->commit();
}

}  // namespace typogen
