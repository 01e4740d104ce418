#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "trapsim/random_stream.hpp"

namespace trapsim::experiments {

inline constexpr const char* kManifestSchemaVersion = "trapsim-manifest/1";

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::string& path);

struct OutputFile {
    std::string path;  // relative to the output directory
    std::string sha256;
    std::uint64_t bytes = 0;
};

struct RunManifest {
    std::string command;
    nlohmann::json config;
    std::string code_version;
    std::uint64_t root_seed = 0;
    std::vector<std::pair<std::string, std::string>> replica_seeds;  // stream path, first draw in hex
    double wall_seconds = 0.0;
    std::vector<OutputFile> files;

    nlohmann::json to_json() const;
    static RunManifest from_json(const nlohmann::json& j);
};

// Fingerprint of the per-replica streams rng.child(i), i < count.
std::vector<std::pair<std::string, std::string>> replica_seed_table(const RandomStream& rng, std::int64_t count);

// Writes text to dir/name and records its digest.
OutputFile write_output(const std::string& dir, const std::string& name, const std::string& text);

const char* code_version();

}  // namespace trapsim::experiments
