// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hanjakit/corpus.hpp"
#include "hanjakit/geometry.hpp"
#include "hanjakit/raster.hpp"
#include "hanjakit/rng.hpp"

namespace hanjakit {

struct CropParams {
    // Per-axis side length as a fraction of the source dimension, drawn
    // uniformly (independently per axis) from [min_fraction, max_fraction].
    double min_fraction = 0.3;
    double max_fraction = 0.9;
    // Lower bound on crop side length, pixels.
    int min_crop_px = 64;
    // Minimum retained-area fraction for an annotation to survive clipping.
    double visibility_tau = 0.5;
};

struct CropRegion {
    PixelRect rect;

    bool operator==(const CropRegion&) const = default;
};

struct CropEntry {
    std::string source_doc_id;
    int crop_index = 0;
    CropRegion region;
    DocumentRecord record; // crop-local coordinates, derived doc_id

    bool operator==(const CropEntry&) const = default;
};

struct AugmentedCorpus {
    int k = 0;
    std::uint64_t seed = 0;
    CropParams params;
    std::string generator; // RNG scheme identifier, for bit-exact replay
    std::vector<CropEntry> crops;
    std::vector<std::string> warnings;
};

// Derived name for the crop_index-th crop of a document.
std::string crop_doc_id(const std::string& source_doc_id, int crop_index);

// Side lengths uniform over the admissible integer range, then position
// uniform among valid placements. Errors when the image is smaller than
// min_crop_px on either axis.
CropRegion sample_crop_region(int image_width, int image_height, const CropParams& params,
                              Rng& rng);

// Intersects each annotation with the region, keeps those whose retained
// area fraction is >= visibility_tau, and translates survivors to
// crop-local coordinates. Labels are unchanged.
std::vector<CharAnnotation> clip_annotations(std::span<const CharAnnotation> annotations,
                                             const CropRegion& region, double visibility_tau);

Raster crop_image(const Raster& raster, const CropRegion& region);

// k crops per document. Each crop draws from its own stream seeded by
// (seed, fnv1a64(doc_id), crop_index), so results do not depend on
// processing order or worker count. Crops that end up with no annotations
// are resampled up to 10 times, then kept empty with a warning.
AugmentedCorpus augment_corpus(const Corpus& corpus, int k, const CropParams& params,
                               std::uint64_t seed, int jobs = 1);

// Combined training-set size: originals plus k crops each.
std::uint64_t expected_total(std::uint64_t n, std::uint64_t k);

inline constexpr int kEmptyCropRetries = 10;

} // namespace hanjakit
