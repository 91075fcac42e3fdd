#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "typogen/artifact.h"
#include "typogen/error.h"

using namespace typogen;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("typogen_artifact_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Sha256, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const auto dir = scratch("sha");
  std::ofstream(dir / "f", std::ios::binary) << "abc";
  EXPECT_EQ(sha256_file(dir / "f"), sha256_hex("abc"));
  EXPECT_THROW(sha256_file(dir / "missing"), Error);
}

TEST(AtomicFile, CommitPublishesAndAbandonRemoves) {
  const auto dir = scratch("atomic");
  {
    AtomicFile f(dir / "kept.txt");
    f.stream() << "hello";
    EXPECT_FALSE(fs::exists(dir / "kept.txt"));
    f.commit();
  }
  EXPECT_EQ(slurp(dir / "kept.txt"), "hello");
  {
    AtomicFile f(dir / "dropped.txt");
    f.stream() << "half";
  }
  EXPECT_FALSE(fs::exists(dir / "dropped.txt"));
  for (const auto& entry : fs::directory_iterator(dir)) EXPECT_EQ(entry.path().filename(), "kept.txt");
}

TEST(ArtifactSet, WritesSidecarsWithDigests) {
  const auto dir = scratch("set");
  std::ofstream(dir / "input.txt", std::ios::binary) << "abc";
  ArtifactMeta meta;
  meta.subcommand = "gen";
  meta.seed = 7;
  meta.inputs.push_back(dir / "input.txt");
  meta.parameters["mean"] = 1.0;
  {
    ArtifactSet set(meta);
    set.open(dir / "a.tsv") << "x\ty\n";
    set.open(dir / "b.tsv") << "z\n";
    set.meta().parameters["records"] = 1;
    set.commit_all();
  }
  EXPECT_EQ(slurp(dir / "a.tsv"), "x\ty\n");
  const auto sidecar = nlohmann::json::parse(slurp(meta_path(dir / "a.tsv")));
  EXPECT_EQ(sidecar.at("subcommand"), "gen");
  EXPECT_EQ(sidecar.at("seed"), 7);
  EXPECT_EQ(sidecar.at("version"), tool_version());
  EXPECT_EQ(sidecar.at("inputs").at(0).at("sha256"), sha256_hex("abc"));
  EXPECT_EQ(sidecar.at("parameters").at("records"), 1);
  EXPECT_TRUE(fs::exists(dir / "b.tsv.meta.json"));

  {
    ArtifactSet abandoned(meta);
    abandoned.open(dir / "c.tsv") << "partial";
  }
  EXPECT_FALSE(fs::exists(dir / "c.tsv"));
  EXPECT_FALSE(fs::exists(dir / "c.tsv.meta.json"));
}
