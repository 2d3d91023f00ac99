// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#include <doctest.h>

#include <set>

#include "hanjakit/augment.hpp"
#include "hanjakit/errors.hpp"
#include "oracles.hpp"

using namespace hanjakit;

namespace {

CharAnnotation make_ann(const std::string& id, double x, double y, double w, double h,
                        const std::string& label = "A") {
    return CharAnnotation{id, Rect{x, y, w, h}, label};
}

Corpus grid_corpus(std::size_t n_docs, int boxes_per_doc) {
    Corpus corpus;
    for (std::size_t d = 0; d < n_docs; ++d) {
        DocumentRecord doc;
        doc.doc_id = "doc_" + std::to_string(d);
        doc.image_path = doc.doc_id + ".png";
        doc.image_width = 600;
        doc.image_height = 500;
        doc.style = "cursive";
        for (int i = 0; i < boxes_per_doc; ++i) {
            doc.annotations.push_back(make_ann("a" + std::to_string(i),
                                               30.0 + 55.0 * (i % 10), 30.0 + 55.0 * (i / 10),
                                               40.0, 40.0));
        }
        corpus.documents.push_back(std::move(doc));
    }
    return corpus;
}

} // namespace

TEST_CASE("sample_crop_region honors the fraction bounds") {
    CropParams params{0.3, 0.9, 64, 0.5};
    Rng rng(123);
    for (int i = 0; i < 500; ++i) {
        CropRegion region = sample_crop_region(1000, 800, params, rng);
        CHECK(region.rect.w >= 300);
        CHECK(region.rect.w <= 900);
        CHECK(region.rect.h >= 240);
        CHECK(region.rect.h <= 720);
        CHECK(region.rect.x >= 0);
        CHECK(region.rect.y >= 0);
        CHECK(region.rect.x + region.rect.w <= 1000);
        CHECK(region.rect.y + region.rect.h <= 800);
    }
}

TEST_CASE("sample_crop_region degenerates to the full image") {
    CropParams params{1.0, 1.0, 1, 0.5};
    Rng rng(5);
    CropRegion region = sample_crop_region(640, 480, params, rng);
    CHECK(region.rect == PixelRect{0, 0, 640, 480});
}

TEST_CASE("sample_crop_region replays identically for a fixed seed") {
    CropParams params;
    Rng a(42), b(42);
    for (int i = 0; i < 20; ++i) {
        CHECK(sample_crop_region(1000, 800, params, a) ==
              sample_crop_region(1000, 800, params, b));
    }
}

TEST_CASE("sample_crop_region rejects undersized images") {
    CropParams params{0.3, 0.9, 64, 0.5};
    Rng rng(1);
    CHECK_THROWS_AS(sample_crop_region(63, 800, params, rng), Error);
}

TEST_CASE("clip_annotations translates boxes fully inside the region") {
    std::vector<CharAnnotation> anns{make_ann("a0", 120, 130, 40, 40)};
    CropRegion region{PixelRect{100, 100, 200, 200}};
    auto out = clip_annotations(anns, region, 0.5);
    REQUIRE(out.size() == 1);
    CHECK(out[0].bbox == Rect{20, 30, 40, 40});
    CHECK(out[0].label == "A");
    CHECK(out[0].id == "a0");
}

TEST_CASE("clip_annotations drops disjoint boxes") {
    std::vector<CharAnnotation> anns{make_ann("a0", 0, 0, 50, 50)};
    CropRegion region{PixelRect{100, 100, 50, 50}};
    CHECK(clip_annotations(anns, region, 0.5).empty());
}

TEST_CASE("clip_annotations applies the visibility threshold exactly") {
    // 10x10 box, region overlaps a 7x7 corner: 49 px^2 < tau * 100.
    std::vector<CharAnnotation> anns{make_ann("a0", 0, 0, 10, 10)};
    CHECK(clip_annotations(anns, CropRegion{PixelRect{3, 3, 100, 100}}, 0.5).empty());
    // 5x10 slab = 50 px^2 is exactly tau * 100, so it is retained.
    auto at_threshold = clip_annotations(anns, CropRegion{PixelRect{5, 0, 100, 100}}, 0.5);
    REQUIRE(at_threshold.size() == 1);
    CHECK(at_threshold[0].bbox == Rect{0, 0, 5, 10});
    // 6x10 = 60 px^2 is retained with the clipped extent.
    auto above = clip_annotations(anns, CropRegion{PixelRect{4, 0, 100, 100}}, 0.5);
    REQUIRE(above.size() == 1);
    CHECK(above[0].bbox == Rect{0, 0, 6, 10});
}

TEST_CASE("clip_annotations agrees with the pixel-overlap oracle") {
    Rng rng(777);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        CharAnnotation ann = make_ann("a", double(rng.bounded(180)), double(rng.bounded(180)),
                                      double(1 + rng.bounded(40)), double(1 + rng.bounded(40)));
        CropRegion region{PixelRect{int(rng.bounded(150)), int(rng.bounded(150)),
                                    int(1 + rng.bounded(100)), int(1 + rng.bounded(100))}};
        double tau = 0.1 + 0.9 * double(rng.bounded(9)) / 9.0;

        std::int64_t overlap = oracles::pixel_overlap(ann.bbox, region.rect.as_rect());
        bool expect_retained = double(overlap) / ann.bbox.area() >= tau;

        auto out = clip_annotations(std::vector<CharAnnotation>{ann}, region, tau);
        CHECK(out.size() == (expect_retained ? 1u : 0u));
        if (!out.empty()) {
            // Retained extent matches the overlap and stays inside the crop.
            CHECK(out[0].bbox.area() == doctest::Approx(double(overlap)));
            CHECK(out[0].bbox.x >= 0);
            CHECK(out[0].bbox.y >= 0);
            CHECK(out[0].bbox.right() <= region.rect.w);
            CHECK(out[0].bbox.bottom() <= region.rect.h);
            ++checked;
        }
    }
    CHECK(checked > 100); // the generator produced a healthy mix
}

TEST_CASE("full-image crop with tau <= 1 keeps every annotation") {
    Corpus corpus = grid_corpus(1, 12);
    const auto& anns = corpus.documents[0].annotations;
    CropRegion full{PixelRect{0, 0, 600, 500}};
    auto out = clip_annotations(anns, full, 1.0);
    CHECK(out == anns);
}

TEST_CASE("crop_image copies the exact pixel window") {
    Raster src = Raster::filled(64, 64, 1, 0);
    Rng rng(99);
    for (auto& p : src.pixels) {
        p = std::uint8_t(rng.next() & 0xFF);
    }
    CropRegion region{PixelRect{17, 9, 21, 30}};
    Raster out = crop_image(src, region);
    REQUIRE(out.width == 21);
    REQUIRE(out.height == 30);
    for (int y = 0; y < out.height; ++y) {
        for (int x = 0; x < out.width; ++x) {
            CHECK(out.at(x, y) == src.at(region.rect.x + x, region.rect.y + y));
        }
    }

    // Full-image crop is the identity; out-of-bounds crops throw.
    CHECK(crop_image(src, CropRegion{PixelRect{0, 0, 64, 64}}) == src);
    CHECK_THROWS_AS(crop_image(src, CropRegion{PixelRect{60, 60, 10, 10}}), Error);
}

TEST_CASE("crop_image on a 2x2 checkerboard") {
    Raster board = Raster::filled(2, 2, 1, 0);
    board.at(0, 0) = 255;
    board.at(1, 1) = 255;
    Raster out = crop_image(board, CropRegion{PixelRect{0, 0, 1, 1}});
    CHECK(out.width == 1);
    CHECK(out.at(0, 0) == 255);
}

TEST_CASE("expected_total reproduces the augmentation ladder") {
    const std::pair<std::uint64_t, std::uint64_t> ladder[] = {
        {0, 1020},  {1, 2040},   {3, 4080},   {5, 6120},
        {10, 11220}, {30, 31620}, {50, 52020}, {100, 103020},
    };
    for (const auto& [k, total] : ladder) {
        CHECK(expected_total(1020, k) == total);
    }
    CHECK(expected_total(0, 7) == 0);
}

TEST_CASE("augment_corpus produces k crops per document") {
    Corpus corpus = grid_corpus(12, 6);
    AugmentedCorpus aug = augment_corpus(corpus, 3, CropParams{}, 11);
    CHECK(aug.crops.size() == 36);
    CHECK(expected_total(corpus.documents.size(), 3) == 48); // originals + crops

    std::set<std::string> ids;
    for (const CropEntry& entry : aug.crops) {
        CHECK(ids.insert(entry.record.doc_id).second);
        CHECK(entry.record.image_width == entry.region.rect.w);
        CHECK(entry.record.image_height == entry.region.rect.h);
        Rect bounds{0, 0, double(entry.region.rect.w), double(entry.region.rect.h)};
        for (const CharAnnotation& ann : entry.record.annotations) {
            CHECK(contains(bounds, ann.bbox));
        }
    }
}

TEST_CASE("augment_corpus with k = 0 yields no crops") {
    Corpus corpus = grid_corpus(3, 4);
    AugmentedCorpus aug = augment_corpus(corpus, 0, CropParams{}, 1);
    CHECK(aug.crops.empty());
    CHECK(expected_total(corpus.documents.size(), 0) == 3);
}

TEST_CASE("augment_corpus output is identical for any worker count") {
    Corpus corpus = grid_corpus(9, 5);
    AugmentedCorpus serial = augment_corpus(corpus, 4, CropParams{}, 2024, 1);
    AugmentedCorpus parallel = augment_corpus(corpus, 4, CropParams{}, 2024, 4);
    REQUIRE(serial.crops.size() == parallel.crops.size());
    for (std::size_t i = 0; i < serial.crops.size(); ++i) {
        CHECK(serial.crops[i] == parallel.crops[i]);
    }
    CHECK(serial.warnings == parallel.warnings);
}

TEST_CASE("augment_corpus rejects an invalid corpus") {
    Corpus corpus = grid_corpus(2, 2);
    corpus.documents[1].doc_id = corpus.documents[0].doc_id;
    CHECK_THROWS_AS(augment_corpus(corpus, 1, CropParams{}, 0), ValidationError);
}

TEST_CASE("augment_corpus warns when a crop stays empty after retries") {
    // One tiny annotation in a huge page: most crops miss it.
    Corpus corpus;
    DocumentRecord doc;
    doc.doc_id = "sparse";
    doc.image_path = "sparse.png";
    doc.image_width = 4000;
    doc.image_height = 4000;
    doc.annotations.push_back(make_ann("a0", 0, 0, 4, 4));
    corpus.documents.push_back(doc);

    CropParams params{0.05, 0.1, 32, 0.5};
    AugmentedCorpus aug = augment_corpus(corpus, 30, params, 9);
    CHECK(aug.crops.size() == 30);
    std::size_t empty_crops = 0;
    for (const CropEntry& entry : aug.crops) {
        if (entry.record.annotations.empty()) {
            ++empty_crops;
        }
    }
    CHECK(empty_crops > 0);
    CHECK(aug.warnings.size() == empty_crops);
}
