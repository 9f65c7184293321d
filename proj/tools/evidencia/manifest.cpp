#include "evidencia/manifest.hpp"

#include <cstdio>
#include <ctime>

#include "evidencia/csvio.hpp"
#include "evidencia/version.hpp"

namespace evidencia::cli {

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string fnv1a64_digest(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string manifest_json(const RunManifest& m, bool with_timestamp) {
    std::string out = "{\"tool\":\"evidencia\",\"version\":\"";
    out += kVersion;
    out += "\",\"subcommand\":\"" + json_escape(m.subcommand) + "\"";
    if (with_timestamp) {
        std::time_t now = std::time(nullptr);
        std::tm utc{};
        gmtime_r(&now, &utc);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
        out += ",\"timestamp\":\"";
        out += stamp;
        out += "\"";
    }
    out += ",\"config\":{";
    for (std::size_t i = 0; i < m.config.size(); ++i) {
        if (i) out += ",";
        out += "\"" + json_escape(m.config[i].first) + "\":\"" +
               json_escape(m.config[i].second) + "\"";
    }
    out += "},\"inputs\":[";
    for (std::size_t i = 0; i < m.inputs.size(); ++i) {
        if (i) out += ",";
        out += "{\"path\":\"" + json_escape(m.inputs[i].first) + "\",\"digest\":\"" +
               json_escape(m.inputs[i].second) + "\"}";
    }
    out += "]}";
    return out;
}

} // namespace evidencia::cli
