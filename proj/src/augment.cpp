// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#include "hanjakit/augment.hpp"

#include <cmath>

#include "hanjakit/errors.hpp"
#include "hanjakit/parallel.hpp"

namespace hanjakit {

namespace {

// Inclusive integer side-length range for one axis.
std::pair<int, int> side_range(int dim, double min_fraction, double max_fraction, int min_px) {
    int lo = int(std::ceil(min_fraction * dim));
    int hi = int(std::floor(max_fraction * dim));
    lo = std::max(lo, min_px);
    hi = std::min(hi, dim);
    if (hi < lo) {
        hi = lo;
    }
    return {lo, hi};
}

} // namespace

std::string crop_doc_id(const std::string& source_doc_id, int crop_index) {
    return source_doc_id + "__crop" + std::to_string(crop_index);
}

CropRegion sample_crop_region(int image_width, int image_height, const CropParams& params,
                              Rng& rng) {
    if (!(params.min_fraction > 0.0 && params.min_fraction <= params.max_fraction &&
          params.max_fraction <= 1.0)) {
        throw Error("require 0 < min_fraction <= max_fraction <= 1", "bad_argument");
    }
    if (params.min_crop_px < 1) {
        throw Error("min_crop_px must be >= 1", "bad_argument");
    }
    if (image_width < params.min_crop_px || image_height < params.min_crop_px) {
        throw Error("image smaller than min_crop_px on at least one axis", "bad_argument");
    }

    auto [w_lo, w_hi] = side_range(image_width, params.min_fraction, params.max_fraction,
                                   params.min_crop_px);
    auto [h_lo, h_hi] = side_range(image_height, params.min_fraction, params.max_fraction,
                                   params.min_crop_px);

    CropRegion region;
    region.rect.w = w_lo + int(rng.bounded(std::uint64_t(w_hi - w_lo) + 1));
    region.rect.h = h_lo + int(rng.bounded(std::uint64_t(h_hi - h_lo) + 1));
    region.rect.x = int(rng.bounded(std::uint64_t(image_width - region.rect.w) + 1));
    region.rect.y = int(rng.bounded(std::uint64_t(image_height - region.rect.h) + 1));
    return region;
}

std::vector<CharAnnotation> clip_annotations(std::span<const CharAnnotation> annotations,
                                             const CropRegion& region, double visibility_tau) {
    if (!(visibility_tau > 0.0 && visibility_tau <= 1.0)) {
        throw Error("visibility_tau must be in (0, 1]", "bad_argument");
    }
    Rect region_rect = region.rect.as_rect();
    std::vector<CharAnnotation> out;
    for (const CharAnnotation& ann : annotations) {
        Rect inter = intersect(ann.bbox, region_rect);
        double original = ann.bbox.area();
        if (original <= 0.0 || inter.area() / original < visibility_tau) {
            continue;
        }
        CharAnnotation clipped = ann;
        clipped.bbox = Rect{inter.x - region_rect.x, inter.y - region_rect.y, inter.w, inter.h};
        out.push_back(std::move(clipped));
    }
    return out;
}

Raster crop_image(const Raster& raster, const CropRegion& region) {
    return crop_raster(raster, region.rect);
}

AugmentedCorpus augment_corpus(const Corpus& corpus, int k, const CropParams& params,
                               std::uint64_t seed, int jobs) {
    if (k < 0) {
        throw Error("augmentation multiplier k must be >= 0", "bad_argument");
    }
    ValidationReport report = validate_corpus(corpus);
    if (!report.valid()) {
        throw ValidationError("corpus is invalid: " + std::to_string(report.error_count()) +
                              " finding(s); run validate for details");
    }

    AugmentedCorpus out;
    out.k = k;
    out.seed = seed;
    out.params = params;
    out.generator = kGeneratorId;

    const std::size_t n_docs = corpus.documents.size();
    out.crops.resize(n_docs * std::size_t(k));
    std::vector<std::vector<std::string>> doc_warnings(n_docs);

    parallel_for(n_docs, jobs, [&](std::size_t d) {
        const DocumentRecord& doc = corpus.documents[d];
        const std::uint64_t doc_hash = fnv1a64(doc.doc_id);
        for (int i = 0; i < k; ++i) {
            Rng rng(derive_subseed(seed, doc_hash, std::uint64_t(i)));
            CropRegion region;
            std::vector<CharAnnotation> clipped;
            int attempts = 0;
            for (;;) {
                region = sample_crop_region(doc.image_width, doc.image_height, params, rng);
                clipped = clip_annotations(doc.annotations, region, params.visibility_tau);
                if (!clipped.empty() || attempts >= kEmptyCropRetries) {
                    break;
                }
                ++attempts;
            }
            if (clipped.empty()) {
                doc_warnings[d].push_back("crop " + crop_doc_id(doc.doc_id, i) +
                                          " has no annotations after " +
                                          std::to_string(kEmptyCropRetries) + " resamples");
            }

            CropEntry entry;
            entry.source_doc_id = doc.doc_id;
            entry.crop_index = i;
            entry.region = region;
            entry.record.doc_id = crop_doc_id(doc.doc_id, i);
            entry.record.image_path = entry.record.doc_id + ".png";
            entry.record.image_width = region.rect.w;
            entry.record.image_height = region.rect.h;
            entry.record.style = doc.style;
            entry.record.annotations = std::move(clipped);
            out.crops[d * std::size_t(k) + std::size_t(i)] = std::move(entry);
        }
    });

    for (const auto& w : doc_warnings) {
        out.warnings.insert(out.warnings.end(), w.begin(), w.end());
    }
    return out;
}

std::uint64_t expected_total(std::uint64_t n, std::uint64_t k) {
    return n * (1 + k);
}

} // namespace hanjakit
