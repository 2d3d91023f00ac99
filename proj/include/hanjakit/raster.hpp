// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <cstdint>
#include <vector>

#include "hanjakit/geometry.hpp"

namespace hanjakit {

// Row-major 8-bit image buffer, 1 (grayscale) or 3 (RGB) channels.
struct Raster {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> pixels;

    static Raster filled(int width, int height, int channels, std::uint8_t value);

    std::uint8_t at(int x, int y, int c = 0) const {
        return pixels[(std::size_t(y) * width + x) * channels + c];
    }
    std::uint8_t& at(int x, int y, int c = 0) {
        return pixels[(std::size_t(y) * width + x) * channels + c];
    }

    bool operator==(const Raster&) const = default;
};

// Copies the rectangle out of the source; throws on out-of-bounds regions.
Raster crop_raster(const Raster& src, const PixelRect& region);

// Nearest-neighbor resample with floor index mapping
// (src = dst_index * src_dim / dst_dim); bit-exact by construction.
Raster scale_nearest(const Raster& src, int new_width, int new_height);

// Grayscale <-> RGB conversion. Gray to RGB replicates the channel; RGB to
// gray uses the integer ITU-R 601 weighting (77, 150, 29) / 256.
Raster convert_channels(const Raster& src, int channels);

// Pastes `src` into `dst` with its top-left corner at (x, y); channel counts
// must match and the paste must fit.
void paste(Raster& dst, const Raster& src, int x, int y);

} // namespace hanjakit
