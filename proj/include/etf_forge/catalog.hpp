// Copyright 2026 The etf-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Content-addressed catalog of certified artifacts. On disk:
//   <root>/records.jsonl           one record per line, append only
//   <root>/payloads/<id>/          recipe, matrices and certificate
//   <root>/.lock                   held exclusively while appending
// Requires linking OpenSSL::Crypto.

#include <fcntl.h>
#include <openssl/evp.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etf_forge/error.hpp"
#include "etf_forge/io.hpp"
#include "etf_forge/recipe.hpp"

namespace etf::catalog {

using io::json;
namespace fs = std::filesystem;

inline constexpr const char* kRecordSchema = "etf-forge/catalog-record/v1";

inline std::string sha256_hex(const std::string& data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest.data(), &len) != 1) {
    fail(ErrorKind::io, "SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

inline std::string recipe_id(const json& recipe) { return sha256_hex(io::canonical(recipe)); }

inline fs::path default_root() {
  if (const char* env = std::getenv("ETF_FORGE_CATALOG"); env && *env) return env;
  if (const char* home = std::getenv("HOME"); home && *home) return fs::path(home) / ".etf-forge" / "catalog";
  return ".etf-forge-catalog";
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Record {
  json body;

  std::string id() const { return body.at("id").get<std::string>(); }
  std::string kind() const { return body.at("kind").get<std::string>(); }
};

struct AuditFailure {
  std::string id;
  std::string message;
};

namespace detail {

class FileLock {
 public:
  explicit FileLock(const fs::path& p) {
    fd_ = ::open(p.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
    if (fd_ < 0) fail(ErrorKind::io, "cannot open lock file " + p.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      fail(ErrorKind::io, "cannot lock " + p.string());
    }
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }

 private:
  int fd_ = -1;
};

}  // namespace detail

class Catalog {
 public:
  explicit Catalog(fs::path root = default_root()) : root_(std::move(root)) {}

  const fs::path& root() const noexcept { return root_; }
  fs::path records_path() const { return root_ / "records.jsonl"; }
  fs::path payload_dir(const std::string& id) const { return root_ / "payloads" / id; }

  std::vector<Record> records() const {
    std::vector<Record> out;
    std::ifstream in(records_path());
    if (!in) return out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      auto j = io::parse_json(line, records_path().string() + ":" + std::to_string(lineno));
      io::expect_schema(j, kRecordSchema);
      out.push_back({std::move(j)});
    }
    return out;
  }

  std::vector<Record> list() const {
    auto out = records();
    std::sort(out.begin(), out.end(), [](const Record& a, const Record& b) { return a.id() < b.id(); });
    return out;
  }

  // Exact id or a unique prefix of one.
  Record find(const std::string& key) const {
    std::optional<Record> hit;
    for (auto& r : records()) {
      if (r.id().rfind(key, 0) != 0) continue;
      if (r.id() == key) return r;
      if (hit) fail(ErrorKind::invalid_argument, "id prefix '" + key + "' is ambiguous");
      hit = std::move(r);
    }
    if (!hit) fail(ErrorKind::invalid_argument, "no catalog record '" + key + "'");
    return *hit;
  }

  // Builds and certifies the recipe, then appends it. Adding a recipe that is
  // already present returns the existing record.
  Record add(const json& recipe) {
    const std::string id = recipe_id(recipe);
    try {
      if (auto r = lookup(id)) return *r;
    } catch (const Error&) {
      // A concurrent append may be half written; the locked re-check decides.
    }
    const auto artifact = recipe::build(recipe);
    const json certificate = recipe::certify_artifact(artifact);

    fs::create_directories(root_);
    detail::FileLock lock(root_ / ".lock");
    if (auto r = lookup(id)) return *r;

    const fs::path dir = payload_dir(id);
    fs::create_directories(dir);
    std::vector<std::pair<std::string, std::string>> files{{"recipe.json", io::canonical(recipe)},
                                                           {"certificate.json", io::canonical(certificate)}};
    for (auto& f : recipe::artifact_files(artifact)) files.push_back(std::move(f));
    json digests = json::object();
    for (const auto& [name, text] : files) {
      io::write_file(dir / name, text);
      digests[name] = sha256_hex(text);
    }

    Record rec{{{"schema", kRecordSchema},
                {"id", id},
                {"kind", artifact.kind},
                {"params", recipe::artifact_params(artifact)},
                {"certificate", certificate},
                {"created_at", utc_timestamp()},
                {"payload", (fs::path("payloads") / id).string()},
                {"files", digests}}};
    std::ofstream out(records_path(), std::ios::app | std::ios::binary);
    out << rec.body.dump() << "\n";
    out.flush();
    if (!out) fail(ErrorKind::io, "cannot append to " + records_path().string());
    return rec;
  }

  // Checks file digests, replays the recipe, re-certifies the stored matrices
  // and compares everything with the record.
  std::optional<std::string> audit_record(const Record& rec) const {
    try {
      const std::string id = rec.id();
      const fs::path dir = root_ / rec.body.at("payload").get<std::string>();
      for (const auto& [name, digest] : rec.body.at("files").items()) {
        if (!fs::exists(dir / name)) return "missing payload file " + name;
        if (sha256_hex(io::read_file(dir / name)) != digest.get<std::string>()) return "digest mismatch in " + name;
      }
      const json recipe = io::read_json(dir / "recipe.json");
      if (recipe_id(recipe) != id) return "recipe hash differs from id";

      const auto stored = stored_artifact(dir, recipe);
      const json certificate = recipe::certify_artifact(stored);
      if (certificate != rec.body.at("certificate")) return "certificate differs from re-verification";
      if (certificate != io::read_json(dir / "certificate.json")) return "certificate file differs from record";

      const auto replayed = recipe::build(recipe);
      if (recipe::artifact_files(replayed) != recipe::artifact_files(stored)) {
        return "replayed recipe differs from stored payload";
      }
      return std::nullopt;
    } catch (const std::exception& e) {
      return e.what();
    }
  }

  std::vector<AuditFailure> audit() const {
    std::vector<AuditFailure> out;
    for (const auto& r : list()) {
      if (auto msg = audit_record(r)) out.push_back({r.id(), *msg});
    }
    return out;
  }

 private:
  std::optional<Record> lookup(const std::string& id) const {
    for (auto& r : records()) {
      if (r.id() == id) return r;
    }
    return std::nullopt;
  }

  static recipe::Artifact stored_artifact(const fs::path& dir, const json& recipe) {
    const std::string kind = recipe.at("kind").get<std::string>();
    const auto load = [&](const char* name) { return io::matrix_from_json(io::read_json(dir / name)); };
    if (fs::exists(dir / "frame.json")) {
      auto m = load("frame.json");
      auto replay = recipe::build(recipe);
      if (replay.is_pair()) fail(ErrorKind::audit, "payload shape differs from recipe");
      QsdEtf q = replay.qsd();
      q.frame = make_frame(std::move(m.quadratic), std::move(m.row_weights));
      return {kind, std::move(q)};
    }
    auto p = load("primary.json");
    auto c = load("complement.json");
    auto primary = make_frame(std::move(p.cyclotomic), std::move(p.row_weights));
    auto complement = make_frame(std::move(c.cyclotomic), std::move(c.row_weights));
    return {kind, make_pair_unchecked(std::move(primary), std::move(complement))};
  }

  fs::path root_;
};

}  // namespace etf::catalog
