// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <filesystem>

#include "hanjakit/raster.hpp"

namespace hanjakit {

// PNG or JPEG, decoded to grayscale or RGB depending on the file contents.
Raster load_image(const std::filesystem::path& path);

void save_png(const Raster& raster, const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const Raster& raster);

} // namespace hanjakit
