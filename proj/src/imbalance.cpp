// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#include "hanjakit/imbalance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "hanjakit/errors.hpp"
#include "hanjakit/image_io.hpp"
#include "hanjakit/parallel.hpp"

namespace hanjakit {

using nlohmann::json;

std::size_t GlyphBank::glyph_count() const {
    std::size_t n = 0;
    for (const auto& [cls, list] : glyphs) {
        n += list.size();
    }
    return n;
}

std::set<std::string> GlyphBank::classes() const {
    std::set<std::string> out;
    for (const auto& [cls, list] : glyphs) {
        if (!list.empty()) {
            out.insert(cls);
        }
    }
    return out;
}

void GlyphBank::save(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    json index = json::object();
    for (const auto& [cls, list] : glyphs) {
        std::filesystem::path class_dir = dir / cls;
        std::filesystem::create_directories(class_dir);
        json entries = json::array();
        for (std::size_t i = 0; i < list.size(); ++i) {
            std::string name = "glyph_" + std::to_string(i) + ".png";
            save_png(list[i].image, class_dir / name);
            entries.push_back({{"file", (cls + "/" + name)},
                               {"source_doc_id", list[i].source_doc_id},
                               {"source_annotation_id", list[i].source_annotation_id}});
        }
        index[cls] = entries;
    }
    std::ofstream out(dir / "index.json", std::ios::binary);
    if (!out) {
        throw IoError("cannot write glyph bank index in " + dir.string());
    }
    out << index.dump(2) << "\n";
}

GlyphBank GlyphBank::load(const std::filesystem::path& dir) {
    std::ifstream in(dir / "index.json", std::ios::binary);
    if (!in) {
        throw IoError("glyph bank index not found in " + dir.string());
    }
    json index;
    try {
        in >> index;
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("glyph bank index: ") + e.what(), e.byte);
    }
    GlyphBank bank;
    for (const auto& [cls, entries] : index.items()) {
        for (const json& entry : entries) {
            Glyph glyph;
            glyph.image = load_image(dir / entry.at("file").get<std::string>());
            glyph.source_doc_id = entry.value("source_doc_id", "");
            glyph.source_annotation_id = entry.value("source_annotation_id", "");
            bank.glyphs[cls].push_back(std::move(glyph));
        }
    }
    return bank;
}

std::set<std::string> missing_classes(const ClassHistogram& hist,
                                      const std::set<std::string>& universe) {
    if (universe.empty()) {
        throw Error("class universe must be non-empty", "bad_argument");
    }
    std::set<std::string> missing;
    for (const std::string& cls : universe) {
        auto it = hist.counts.find(cls);
        if (it == hist.counts.end() || it->second == 0) {
            missing.insert(cls);
        }
    }
    return missing;
}

ImbalanceReport imbalance_metrics(const ClassHistogram& hist,
                                  const std::set<std::string>& universe) {
    ImbalanceReport report;
    report.missing = missing_classes(hist, universe);
    report.counts = hist;

    // Counts over the universe, absent classes as zero.
    std::vector<std::uint64_t> counts;
    counts.reserve(universe.size());
    for (const std::string& cls : universe) {
        auto it = hist.counts.find(cls);
        counts.push_back(it == hist.counts.end() ? 0 : it->second);
    }
    std::sort(counts.begin(), counts.end());

    long double total = 0.0L;
    long double weighted = 0.0L; // sum of rank * count, ranks 1..n ascending
    for (std::size_t i = 0; i < counts.size(); ++i) {
        total += counts[i];
        weighted += (long double)(i + 1) * counts[i];
    }
    const long double n = (long double)counts.size();
    if (total <= 0.0L) {
        report.all_zero = true;
        report.gini = 0.0;
        report.max_min_ratio = 0.0;
        return report;
    }
    report.gini = double(2.0L * weighted / (n * total) - (n + 1.0L) / n);

    std::uint64_t max_count = counts.back();
    std::uint64_t min_nonzero = 0;
    for (std::uint64_t c : counts) {
        if (c > 0) {
            min_nonzero = c;
            break;
        }
    }
    report.max_min_ratio = double(max_count) / double(std::max<std::uint64_t>(1, min_nonzero));
    return report;
}

std::string ImbalanceReport::to_json_string() const {
    json j{{"gini", gini},
           {"max_min_ratio", max_min_ratio},
           {"total_annotations", counts.total},
           {"present_classes", counts.counts.size()},
           {"missing_classes", missing.size()},
           {"missing", missing},
           {"all_zero", all_zero}};
    if (all_zero) {
        j["warning"] = "all class counts are zero; gini reported as 0";
    }
    return j.dump(2) + "\n";
}

GlyphBank harvest_glyphs(const Corpus& corpus, const ImageProvider& images,
                         const std::set<std::string>* filter, int jobs) {
    const std::size_t n_docs = corpus.documents.size();
    std::vector<GlyphBank> partial(n_docs);
    parallel_for(n_docs, jobs, [&](std::size_t d) {
        const DocumentRecord& doc = corpus.documents[d];
        bool wanted = !filter || std::any_of(doc.annotations.begin(), doc.annotations.end(),
                                             [&](const CharAnnotation& a) {
                                                 return filter->count(a.label) > 0;
                                             });
        if (!wanted) {
            return;
        }
        Raster raster = images(doc);
        for (const CharAnnotation& ann : doc.annotations) {
            if (filter && !filter->count(ann.label)) {
                continue;
            }
            // Integerize to the pixel grid; fractional boxes clamp inward.
            PixelRect rect{int(std::llround(ann.bbox.x)), int(std::llround(ann.bbox.y)),
                           int(std::llround(ann.bbox.w)), int(std::llround(ann.bbox.h))};
            rect.x = std::clamp(rect.x, 0, raster.width - 1);
            rect.y = std::clamp(rect.y, 0, raster.height - 1);
            rect.w = std::max(1, std::min(rect.w, raster.width - rect.x));
            rect.h = std::max(1, std::min(rect.h, raster.height - rect.y));
            Glyph glyph;
            glyph.image = crop_raster(raster, rect);
            glyph.source_doc_id = doc.doc_id;
            glyph.source_annotation_id = ann.id;
            partial[d].glyphs[ann.label].push_back(std::move(glyph));
        }
    });

    GlyphBank bank;
    for (GlyphBank& p : partial) {
        for (auto& [cls, list] : p.glyphs) {
            auto& dest = bank.glyphs[cls];
            std::move(list.begin(), list.end(), std::back_inserter(dest));
        }
    }
    return bank;
}

SyntheticPage compose_synthetic_page(const GlyphBank& bank, const GridSpec& grid,
                                     std::span<const std::string> class_sequence, Rng& rng,
                                     const std::string& doc_id) {
    if (grid.columns < 1 || grid.rows < 1 || grid.cell_width < 2 || grid.cell_height < 2 ||
        grid.margin < 0) {
        throw Error("invalid grid spec", "bad_argument");
    }
    if (!(grid.glyph_fill > 0.0 && grid.glyph_fill <= 1.0) || grid.jitter_frac < 0.0) {
        throw Error("invalid grid spec fractions", "bad_argument");
    }
    if (class_sequence.size() > std::size_t(grid.capacity())) {
        throw Error("class sequence longer than grid capacity", "bad_argument");
    }
    for (const std::string& cls : class_sequence) {
        auto it = bank.glyphs.find(cls);
        if (it == bank.glyphs.end() || it->second.empty()) {
            throw MissingClassError("no glyphs for class \"" + cls + "\"", cls);
        }
    }

    int channels = 1;
    for (const std::string& cls : class_sequence) {
        for (const Glyph& g : bank.glyphs.at(cls)) {
            channels = std::max(channels, g.image.channels);
        }
    }

    SyntheticPage page;
    page.image = Raster::filled(grid.page_width(), grid.page_height(), channels, 255);
    page.record.doc_id = doc_id;
    page.record.image_path = doc_id + ".png";
    page.record.image_width = grid.page_width();
    page.record.image_height = grid.page_height();
    page.record.style = "cursive";

    const int content_w = std::max(1, int(std::floor(grid.cell_width * grid.glyph_fill)));
    const int content_h = std::max(1, int(std::floor(grid.cell_height * grid.glyph_fill)));

    for (std::size_t s = 0; s < class_sequence.size(); ++s) {
        const std::string& cls = class_sequence[s];
        const auto& candidates = bank.glyphs.at(cls);
        const Glyph& glyph = candidates[rng.bounded(candidates.size())];

        // Right-to-left column fill, top-to-bottom rows.
        int col_offset = int(s) / grid.rows;
        int row = int(s) % grid.rows;
        int col = grid.columns - 1 - col_offset;
        int cell_x = grid.margin + col * grid.cell_width;
        int cell_y = grid.margin + row * grid.cell_height;

        double scale = std::min(double(content_w) / glyph.image.width,
                                double(content_h) / glyph.image.height);
        int tw = std::clamp(int(std::floor(glyph.image.width * scale)), 1, content_w);
        int th = std::clamp(int(std::floor(glyph.image.height * scale)), 1, content_h);
        Raster scaled = scale_nearest(glyph.image, tw, th);
        if (scaled.channels != channels) {
            scaled = convert_channels(scaled, channels);
        }

        int slack_x = grid.cell_width - tw;
        int slack_y = grid.cell_height - th;
        int amp_x = std::min(slack_x / 2, int(std::floor(grid.cell_width * grid.jitter_frac)));
        int amp_y = std::min(slack_y / 2, int(std::floor(grid.cell_height * grid.jitter_frac)));
        int dx = slack_x / 2 - amp_x + int(rng.bounded(std::uint64_t(2 * amp_x) + 1));
        int dy = slack_y / 2 - amp_y + int(rng.bounded(std::uint64_t(2 * amp_y) + 1));

        int px = cell_x + dx;
        int py = cell_y + dy;
        paste(page.image, scaled, px, py);

        CharAnnotation ann;
        char id[32];
        std::snprintf(id, sizeof id, "g%04zu", s);
        ann.id = id;
        ann.bbox = Rect{double(px), double(py), double(tw), double(th)};
        ann.label = cls;
        page.record.annotations.push_back(std::move(ann));
    }
    return page;
}

} // namespace hanjakit
