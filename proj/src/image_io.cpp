// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#include "hanjakit/image_io.hpp"

#include <fstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "hanjakit/errors.hpp"

namespace hanjakit {

namespace {

Raster from_mat(const cv::Mat& mat) {
    Raster out;
    out.width = mat.cols;
    out.height = mat.rows;
    out.channels = mat.channels();
    out.pixels.resize(std::size_t(mat.cols) * mat.rows * mat.channels());
    if (mat.channels() == 1) {
        for (int y = 0; y < mat.rows; ++y) {
            const std::uint8_t* row = mat.ptr<std::uint8_t>(y);
            std::copy(row, row + mat.cols, &out.pixels[std::size_t(y) * mat.cols]);
        }
    } else {
        // OpenCV stores BGR; the Raster contract is RGB.
        for (int y = 0; y < mat.rows; ++y) {
            const cv::Vec3b* row = mat.ptr<cv::Vec3b>(y);
            for (int x = 0; x < mat.cols; ++x) {
                std::size_t base = (std::size_t(y) * mat.cols + x) * 3;
                out.pixels[base + 0] = row[x][2];
                out.pixels[base + 1] = row[x][1];
                out.pixels[base + 2] = row[x][0];
            }
        }
    }
    return out;
}

cv::Mat to_mat(const Raster& raster) {
    if (raster.channels == 1) {
        cv::Mat mat(raster.height, raster.width, CV_8UC1);
        for (int y = 0; y < raster.height; ++y) {
            std::uint8_t* row = mat.ptr<std::uint8_t>(y);
            std::copy(&raster.pixels[std::size_t(y) * raster.width],
                      &raster.pixels[std::size_t(y) * raster.width] + raster.width, row);
        }
        return mat;
    }
    cv::Mat mat(raster.height, raster.width, CV_8UC3);
    for (int y = 0; y < raster.height; ++y) {
        cv::Vec3b* row = mat.ptr<cv::Vec3b>(y);
        for (int x = 0; x < raster.width; ++x) {
            std::size_t base = (std::size_t(y) * raster.width + x) * 3;
            row[x][2] = raster.pixels[base + 0];
            row[x][1] = raster.pixels[base + 1];
            row[x][0] = raster.pixels[base + 2];
        }
    }
    return mat;
}

} // namespace

Raster load_image(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw IoError("image file not found: " + path.string());
    }
    cv::Mat mat = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (mat.empty()) {
        throw IoError("cannot decode image: " + path.string());
    }
    if (mat.channels() == 4) {
        // Drop the alpha plane.
        cv::Mat bgr(mat.rows, mat.cols, CV_8UC3);
        cv::mixChannels({mat}, {bgr}, {0, 0, 1, 1, 2, 2});
        mat = bgr;
    }
    if (mat.depth() != CV_8U) {
        throw IoError("unsupported pixel depth in " + path.string() + " (8-bit required)");
    }
    if (mat.channels() != 1 && mat.channels() != 3) {
        throw IoError("unsupported channel count in " + path.string());
    }
    return from_mat(mat);
}

std::vector<std::uint8_t> encode_png(const Raster& raster) {
    if (raster.width < 1 || raster.height < 1) {
        throw Error("cannot encode an empty raster", "bad_argument");
    }
    std::vector<std::uint8_t> buf;
    if (!cv::imencode(".png", to_mat(raster), buf)) {
        throw IoError("PNG encoding failed");
    }
    return buf;
}

void save_png(const Raster& raster, const std::filesystem::path& path) {
    std::vector<std::uint8_t> buf = encode_png(raster);
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file: " + path.string());
    }
    out.write(reinterpret_cast<const char*>(buf.data()), std::streamsize(buf.size()));
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

} // namespace hanjakit
