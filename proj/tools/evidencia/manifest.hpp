#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace evidencia::cli {

/// Reproducibility record attached to every output: tool identity, resolved
/// configuration, and digests of consumed input files.
struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> config; // key, value
    std::vector<std::pair<std::string, std::string>> inputs; // path, digest

    void add_config(const std::string& key, const std::string& value) {
        config.emplace_back(key, value);
    }
    void add_input(const std::string& path, const std::string& digest) {
        inputs.emplace_back(path, digest);
    }
};

std::uint64_t fnv1a64(const std::string& bytes);

/// "fnv1a64:<16 hex digits>".
std::string fnv1a64_digest(const std::string& bytes);

/// Manifest as a JSON object. with_timestamp adds the current UTC time; the
/// embedded (timestamp-free) form keeps output files byte-reproducible.
std::string manifest_json(const RunManifest& m, bool with_timestamp);

} // namespace evidencia::cli
