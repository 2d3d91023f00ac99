// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

// Regenerates the checked-in test fixtures:
//
//   gen_fixtures <fixtures_dir>
//
// writes corpus12/ (12 synthetic pages with labels), universe.json and
// detections.json. The golden eval outputs under golden/ are produced by
// running the CLI on these fixtures afterwards:
//
//   hanjakit eval --corpus fixtures/corpus12 \
//     --detections fixtures/detections.json \
//     --variants fixtures/variants.tsv --out <tmp>
//   cp <tmp>/report.json <tmp>/correction.csv fixtures/golden/
//
// Everything is seeded; reruns are bit-identical.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <vector>

#include <json.hpp>

#include "hanjakit/coco.hpp"
#include "hanjakit/corpus.hpp"
#include "hanjakit/eval.hpp"
#include "hanjakit/image_io.hpp"
#include "hanjakit/imbalance.hpp"
#include "hanjakit/rng.hpp"

namespace fs = std::filesystem;
using namespace hanjakit;

namespace {

// Deterministic stand-in glyph: blocky ink pattern derived from the class
// hash. Good enough to exercise cropping, harvesting and compositing.
Raster pattern_glyph(const std::string& cls, int size, std::uint64_t salt) {
    Raster glyph = Raster::filled(size, size, 1, 255);
    Rng rng(derive_subseed(fnv1a64(cls), salt, 0));
    const int blocks = 5;
    const int cell = size / blocks;
    for (int by = 0; by < blocks; ++by) {
        for (int bx = 0; bx < blocks; ++bx) {
            if (rng.bounded(3) == 0) {
                continue;
            }
            std::uint8_t ink = std::uint8_t(rng.bounded(110));
            for (int y = by * cell; y < (by + 1) * cell; ++y) {
                for (int x = bx * cell; x < (bx + 1) * cell; ++x) {
                    glyph.at(x, y) = ink;
                }
            }
        }
    }
    return glyph;
}

const std::vector<std::string> kClasses = {
    "體", "体", "峰", "峯", "國", "国", "學", "学", "說", "悦", "知", "智",
    "己", "已", "日", "曰", "人", "入", "早", "蚤", "山", "水", "火", "木",
    "金", "天", "地", "月", "星", "雲", "風", "雨", "花", "鳥", "江", "河",
};

// Extra universe entries that never occur in the corpus.
const std::vector<std::string> kExtraUniverse = {
    "龜", "鹽", "鶴", "麥", "黃", "鼓", "齊", "靑", "齒", "龠",
};

// Variant partners used for substitution errors in the detection fixture.
const std::map<std::string, std::string> kVariantPartner = {
    {"體", "体"}, {"体", "體"}, {"峰", "峯"}, {"峯", "峰"}, {"國", "国"},
    {"国", "國"}, {"學", "学"}, {"学", "學"}, {"說", "悦"}, {"悦", "說"},
    {"知", "智"}, {"智", "知"}, {"早", "蚤"}, {"蚤", "早"},
};

const std::map<std::string, std::string> kConfusablePartner = {
    {"己", "已"}, {"已", "己"}, {"日", "曰"}, {"曰", "日"}, {"人", "入"}, {"入", "人"},
};

void write_text(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: gen_fixtures <fixtures_dir>\n";
        return 2;
    }
    fs::path fixtures = argv[1];
    fs::path corpus_dir = fixtures / "corpus12";
    fs::create_directories(corpus_dir);

    GlyphBank bank;
    for (const std::string& cls : kClasses) {
        for (std::uint64_t salt = 0; salt < 3; ++salt) {
            bank.glyphs[cls].push_back(Glyph{pattern_glyph(cls, 40, salt), "", ""});
        }
    }

    GridSpec grid;
    grid.columns = 4;
    grid.rows = 5;
    grid.cell_width = 48;
    grid.cell_height = 48;
    grid.margin = 16;

    Corpus corpus;
    for (int p = 0; p < 12; ++p) {
        char id[32];
        std::snprintf(id, sizeof id, "doc_%04d", p);
        Rng seq_rng(derive_subseed(0xF1C5, fnv1a64(id), 0));
        std::vector<std::string> sequence;
        for (int i = 0; i < grid.capacity(); ++i) {
            sequence.push_back(kClasses[seq_rng.bounded(kClasses.size())]);
        }
        Rng page_rng(derive_subseed(0xF1C5, fnv1a64(id), 1));
        SyntheticPage page = compose_synthetic_page(bank, grid, sequence, page_rng, id);
        save_png(page.image, corpus_dir / page.record.image_path);
        write_text(corpus_dir / (page.record.doc_id + ".json"),
                   serialize_document(page.record));
        corpus.documents.push_back(page.record);
    }

    nlohmann::json universe = nlohmann::json::array();
    for (const std::string& cls : kClasses) {
        universe.push_back(cls);
    }
    for (const std::string& cls : kExtraUniverse) {
        universe.push_back(cls);
    }
    write_text(fixtures / "universe.json", universe.dump(2) + "\n");

    // Detection fixture: jittered boxes with seeded label errors (variant
    // substitutions, confusable substitutions, random errors), a few missed
    // characters and a few low-confidence spurious boxes.
    Rng det_rng(0xDE7EC7);
    std::vector<Detection> detections;
    for (const DocumentRecord& doc : corpus.documents) {
        bool confusable_injected = false;
        for (const CharAnnotation& ann : doc.annotations) {
            double miss = det_rng.uniform();
            if (miss < 0.03) {
                continue;
            }
            Detection det;
            det.doc_id = doc.doc_id;
            double jx = det_rng.uniform(-0.08, 0.08) * ann.bbox.w;
            double jy = det_rng.uniform(-0.08, 0.08) * ann.bbox.h;
            double jw = det_rng.uniform(0.94, 1.06);
            double jh = det_rng.uniform(0.94, 1.06);
            det.bbox = Rect{ann.bbox.x + jx, ann.bbox.y + jy, ann.bbox.w * jw,
                            ann.bbox.h * jh};
            det.confidence = 0.60 + 0.39 * det_rng.uniform();

            det.label = ann.label;
            auto confusable = kConfusablePartner.find(ann.label);
            if (!confusable_injected && confusable != kConfusablePartner.end()) {
                // One guaranteed look-alike transcription slip per document.
                det.label = confusable->second;
                confusable_injected = true;
            } else {
                double u = det_rng.uniform();
                if (u < 0.05) {
                    auto variant = kVariantPartner.find(ann.label);
                    if (variant != kVariantPartner.end()) {
                        det.label = variant->second;
                    }
                } else if (u < 0.09) {
                    std::string other = kClasses[det_rng.bounded(kClasses.size())];
                    if (other != ann.label) {
                        det.label = other;
                    }
                }
            }
            detections.push_back(std::move(det));
        }
        if (det_rng.uniform() < 0.5) {
            Detection spurious;
            spurious.doc_id = doc.doc_id;
            spurious.bbox = Rect{2.0 + double(det_rng.bounded(8)),
                                 2.0 + double(det_rng.bounded(8)), 10.0, 10.0};
            spurious.label = kClasses[det_rng.bounded(kClasses.size())];
            spurious.confidence = 0.30 + 0.15 * det_rng.uniform();
            detections.push_back(std::move(spurious));
        }
    }
    write_text(fixtures / "detections.json", serialize_detections(detections));

    std::cout << "wrote " << corpus.documents.size() << " documents, " << detections.size()
              << " detections under " << fixtures << "\n";
    return 0;
}
