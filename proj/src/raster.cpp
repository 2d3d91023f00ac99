// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#include "hanjakit/raster.hpp"

#include <cstring>

#include "hanjakit/errors.hpp"

namespace hanjakit {

Raster Raster::filled(int width, int height, int channels, std::uint8_t value) {
    Raster r;
    r.width = width;
    r.height = height;
    r.channels = channels;
    r.pixels.assign(std::size_t(width) * height * channels, value);
    return r;
}

Raster crop_raster(const Raster& src, const PixelRect& region) {
    if (region.w < 1 || region.h < 1 || region.x < 0 || region.y < 0 ||
        region.x + region.w > src.width || region.y + region.h > src.height) {
        throw Error("crop region outside raster bounds", "bad_argument");
    }
    Raster out;
    out.width = region.w;
    out.height = region.h;
    out.channels = src.channels;
    out.pixels.resize(std::size_t(region.w) * region.h * src.channels);
    const std::size_t row_bytes = std::size_t(region.w) * src.channels;
    for (int j = 0; j < region.h; ++j) {
        const std::uint8_t* src_row =
            &src.pixels[(std::size_t(region.y + j) * src.width + region.x) * src.channels];
        std::memcpy(&out.pixels[std::size_t(j) * row_bytes], src_row, row_bytes);
    }
    return out;
}

Raster scale_nearest(const Raster& src, int new_width, int new_height) {
    if (new_width < 1 || new_height < 1 || src.width < 1 || src.height < 1) {
        throw Error("scale_nearest requires positive dimensions", "bad_argument");
    }
    Raster out;
    out.width = new_width;
    out.height = new_height;
    out.channels = src.channels;
    out.pixels.resize(std::size_t(new_width) * new_height * src.channels);
    for (int j = 0; j < new_height; ++j) {
        int sy = int(std::int64_t(j) * src.height / new_height);
        for (int i = 0; i < new_width; ++i) {
            int sx = int(std::int64_t(i) * src.width / new_width);
            for (int c = 0; c < src.channels; ++c) {
                out.at(i, j, c) = src.at(sx, sy, c);
            }
        }
    }
    return out;
}

Raster convert_channels(const Raster& src, int channels) {
    if (channels != 1 && channels != 3) {
        throw Error("channel count must be 1 or 3", "bad_argument");
    }
    if (src.channels == channels) {
        return src;
    }
    Raster out;
    out.width = src.width;
    out.height = src.height;
    out.channels = channels;
    out.pixels.resize(std::size_t(src.width) * src.height * channels);
    const std::size_t n = std::size_t(src.width) * src.height;
    if (channels == 3) {
        for (std::size_t i = 0; i < n; ++i) {
            std::uint8_t v = src.pixels[i];
            out.pixels[i * 3 + 0] = v;
            out.pixels[i * 3 + 1] = v;
            out.pixels[i * 3 + 2] = v;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            unsigned r = src.pixels[i * 3 + 0];
            unsigned g = src.pixels[i * 3 + 1];
            unsigned b = src.pixels[i * 3 + 2];
            out.pixels[i] = std::uint8_t((77 * r + 150 * g + 29 * b) >> 8);
        }
    }
    return out;
}

void paste(Raster& dst, const Raster& src, int x, int y) {
    if (src.channels != dst.channels) {
        throw Error("paste requires matching channel counts", "bad_argument");
    }
    if (x < 0 || y < 0 || x + src.width > dst.width || y + src.height > dst.height) {
        throw Error("paste target outside destination bounds", "bad_argument");
    }
    const std::size_t row_bytes = std::size_t(src.width) * src.channels;
    for (int j = 0; j < src.height; ++j) {
        std::memcpy(&dst.pixels[(std::size_t(y + j) * dst.width + x) * dst.channels],
                    &src.pixels[std::size_t(j) * row_bytes], row_bytes);
    }
}

} // namespace hanjakit
