#pragma once

// Reproducibility manifests written next to CLI outputs as
// <output>.manifest.json.

#include <openssl/evp.h>

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "coprime/error.hpp"
#include "coprime/io.hpp"

namespace coprime::cli {

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string iso8601_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path + " for digest");
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  char buf[1 << 16];
  while (in) {
    in.read(buf, sizeof buf);
    EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
  }
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

inline std::string hexfloat(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

struct RunManifest {
  std::string command_line;
  nlohmann::json parameters = nlohmann::json::object();
  std::optional<std::uint64_t> seed;
  std::string tool_version = kToolVersion;
  std::string start_time;
  std::string end_time;
  std::vector<std::pair<std::string, std::string>> outputs;  // path, sha256

  /// Record a numeric flag as the double actually used.
  void param(const std::string& name, double value) {
    parameters[name] = {{"value", value}, {"decimal", format_double(value)}, {"binary", hexfloat(value)}};
  }
  void param(const std::string& name, const std::string& value) { parameters[name] = value; }

  nlohmann::json to_json() const {
    nlohmann::json files = nlohmann::json::array();
    for (const auto& [path, digest] : outputs) files.push_back({{"path", path}, {"sha256", digest}});
    return {{"command_line", command_line},
            {"parameters", parameters},
            {"seed", seed ? nlohmann::json(*seed) : nlohmann::json(nullptr)},
            {"tool_version", tool_version},
            {"start_time", start_time},
            {"end_time", end_time},
            {"output_files", files}};
  }

  void write_beside(const std::string& output_path) {
    outputs.emplace_back(output_path, sha256_file(output_path));
    end_time = iso8601_now();
    std::ofstream out(output_path + ".manifest.json");
    out << to_json().dump(2) << '\n';
  }
};

}  // namespace coprime::cli
