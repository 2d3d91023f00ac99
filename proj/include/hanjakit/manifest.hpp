// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace hanjakit {

inline constexpr const char* kVersion = "0.1.0";

// Reproducibility record written next to every data-producing command's
// output. The timestamp is the only field that varies between identical
// runs.
struct RunManifest {
    std::string command;
    std::string version = kVersion;
    std::string generator; // RNG scheme id, empty for non-random commands
    std::uint64_t seed = 0;
    bool seeded = false;
    std::map<std::string, std::string> parameters;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::vector<std::string> warnings;
    std::string created_at; // filled by write() if empty

    std::string to_json_string() const;
    void write(const std::filesystem::path& dir) const;
};

std::string utc_timestamp_now();

} // namespace hanjakit
