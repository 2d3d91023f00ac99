// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#include "hanjakit/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "hanjakit/errors.hpp"

namespace hanjakit {

using nlohmann::json;

std::string utc_timestamp_now() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string RunManifest::to_json_string() const {
    json j{{"command", command},
           {"version", version},
           {"parameters", parameters},
           {"inputs", inputs},
           {"outputs", outputs},
           {"warnings", warnings},
           {"created_at", created_at.empty() ? utc_timestamp_now() : created_at}};
    if (seeded) {
        j["seed"] = seed;
        j["generator"] = generator;
    }
    return j.dump(2) + "\n";
}

void RunManifest::write(const std::filesystem::path& dir) const {
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) {
        throw IoError("cannot write manifest in " + dir.string());
    }
    out << to_json_string();
}

} // namespace hanjakit
