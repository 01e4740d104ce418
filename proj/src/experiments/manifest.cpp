#include "trapsim/experiments/manifest.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace trapsim::experiments {

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256: digest failed");
    std::string hex;
    hex.reserve(2 * len);
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

std::string sha256_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("sha256: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return sha256_hex(ss.str());
}

nlohmann::json RunManifest::to_json() const {
    nlohmann::json j;
    j["schema"] = kManifestSchemaVersion;
    j["command"] = command;
    j["config"] = config;
    j["code_version"] = code_version;
    j["root_seed"] = root_seed;
    j["replica_seeds"] = nlohmann::json::array();
    for (const auto& [stream, draw] : replica_seeds) j["replica_seeds"].push_back({{"stream", stream}, {"first_draw", draw}});
    j["wall_seconds"] = wall_seconds;
    j["files"] = nlohmann::json::array();
    for (const auto& f : files) j["files"].push_back({{"path", f.path}, {"sha256", f.sha256}, {"bytes", f.bytes}});
    return j;
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
    if (j.value("schema", "") != kManifestSchemaVersion) throw std::invalid_argument("manifest: schema mismatch");
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config");
    m.code_version = j.at("code_version").get<std::string>();
    m.root_seed = j.at("root_seed").get<std::uint64_t>();
    for (const auto& s : j.at("replica_seeds")) m.replica_seeds.emplace_back(s.at("stream"), s.at("first_draw"));
    m.wall_seconds = j.at("wall_seconds").get<double>();
    for (const auto& f : j.at("files")) m.files.push_back({f.at("path"), f.at("sha256"), f.at("bytes")});
    return m;
}

std::vector<std::pair<std::string, std::string>> replica_seed_table(const RandomStream& rng, std::int64_t count) {
    std::vector<std::pair<std::string, std::string>> out;
    char buf[17];
    for (std::int64_t i = 0; i < count; ++i) {
        RandomStream c = rng.child(static_cast<std::uint64_t>(i));
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(c.next_u64()));
        out.emplace_back(c.label(), buf);
    }
    return out;
}

OutputFile write_output(const std::string& dir, const std::string& name, const std::string& text) {
    std::filesystem::create_directories(dir);
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("output: cannot write " + path.string());
    out << text;
    out.close();
    return {name, sha256_hex(text), text.size()};
}

const char* code_version() { return TRAPSIM_VERSION; }

}  // namespace trapsim::experiments
