#pragma once

#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <string>
#include <vector>

#include <json.hpp>

#include "saa/adder.hpp"
#include "saa/version.hpp"

namespace saa {

// Reproducibility record written next to (or inside) every CSV/JSON artifact.
// Honors SOURCE_DATE_EPOCH so that repeated runs can be byte-identical.
struct RunManifest {
  std::string tool_version = version;
  std::string command;
  std::vector<AdderConfig> configs;
  std::string mode;
  uint64_t samples = 0;
  uint64_t seed = 0;
  int64_t timestamp = 0;  // unix seconds

  friend bool operator==(const RunManifest&, const RunManifest&) = default;
};

inline int64_t manifest_timestamp() {
  if (const char* env = std::getenv("SOURCE_DATE_EPOCH"))
    return std::strtoll(env, nullptr, 10);
  return static_cast<int64_t>(std::time(nullptr));
}

inline nlohmann::json to_json(const AdderConfig& cfg) {
  nlohmann::json j{{"kind", std::string(kind_name(cfg.kind))},
                   {"n", cfg.n},
                   {"p", cfg.p}};
  if (cfg.kind == AdderKind::Ldca) j["l"] = cfg.l;
  if (cfg.kind == AdderKind::MHerloa) j["k"] = cfg.k;
  return j;
}

inline AdderConfig config_from_json(const nlohmann::json& j) {
  const auto kind = kind_from_name(j.at("kind").get<std::string>());
  if (!kind) throw ConfigError("unknown adder kind in manifest");
  std::optional<int> l, k;
  if (j.contains("l")) l = j.at("l").get<int>();
  if (j.contains("k")) k = j.at("k").get<int>();
  return validate_config(*kind, j.at("n").get<int>(), j.at("p").get<int>(), l, k);
}

inline nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json cfgs = nlohmann::json::array();
  for (const AdderConfig& c : m.configs) cfgs.push_back(to_json(c));
  return nlohmann::json{{"tool_version", m.tool_version},
                        {"command", m.command},
                        {"configs", cfgs},
                        {"mode", m.mode},
                        {"samples", m.samples},
                        {"seed", m.seed},
                        {"timestamp", m.timestamp}};
}

inline RunManifest manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  m.tool_version = j.at("tool_version").get<std::string>();
  m.command = j.at("command").get<std::string>();
  for (const auto& c : j.at("configs")) m.configs.push_back(config_from_json(c));
  m.mode = j.at("mode").get<std::string>();
  m.samples = j.at("samples").get<uint64_t>();
  m.seed = j.at("seed").get<uint64_t>();
  m.timestamp = j.at("timestamp").get<int64_t>();
  return m;
}

}  // namespace saa
