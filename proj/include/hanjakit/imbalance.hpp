// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "hanjakit/corpus.hpp"
#include "hanjakit/raster.hpp"
#include "hanjakit/rng.hpp"

namespace hanjakit {

struct Glyph {
    Raster image;
    std::string source_doc_id;
    std::string source_annotation_id;
};

struct GlyphBank {
    std::map<std::string, std::vector<Glyph>> glyphs;

    std::size_t glyph_count() const;
    std::set<std::string> classes() const;

    // Directory tree <dir>/<class>/glyph_<n>.png plus an index.json.
    void save(const std::filesystem::path& dir) const;
    static GlyphBank load(const std::filesystem::path& dir);
};

struct ImbalanceReport {
    std::set<std::string> missing;
    ClassHistogram counts;
    // Gini coefficient of per-class counts over the full universe, absent
    // classes counted as zero. 0 for uniform counts.
    double gini = 0.0;
    // max count / max(1, min nonzero count); 0 when all counts are zero.
    double max_min_ratio = 0.0;
    bool all_zero = false; // degenerate input, gini reported 0 with warning

    std::string to_json_string() const;
};

std::set<std::string> missing_classes(const ClassHistogram& hist,
                                      const std::set<std::string>& universe);

ImbalanceReport imbalance_metrics(const ClassHistogram& hist,
                                  const std::set<std::string>& universe);

using ImageProvider = std::function<Raster(const DocumentRecord&)>;

// Crops every annotation's bbox pixels out of its document image; bank is
// indexed by class. `filter` restricts harvesting to the given classes.
GlyphBank harvest_glyphs(const Corpus& corpus, const ImageProvider& images,
                         const std::set<std::string>* filter = nullptr, int jobs = 1);

struct GridSpec {
    int columns = 8;
    int rows = 10;
    int cell_width = 64;
    int cell_height = 64;
    int margin = 16;
    // Fraction of the cell that the glyph box may occupy; the rest is
    // inter-character spacing so columns stay separable.
    double glyph_fill = 0.5;
    // Placement jitter amplitude as a fraction of the cell size.
    double jitter_frac = 0.05;

    int page_width() const { return 2 * margin + columns * cell_width; }
    int page_height() const { return 2 * margin + rows * cell_height; }
    int capacity() const { return columns * rows; }
};

struct SyntheticPage {
    Raster image;
    DocumentRecord record;
};

// Fills grid cells right-to-left by column, top-to-bottom within a column.
// Glyphs are scaled to the cell's content box (nearest neighbor, aspect
// preserved) and placed with small seeded jitter that keeps the box inside
// its cell. The page background is uniform white.
SyntheticPage compose_synthetic_page(const GlyphBank& bank, const GridSpec& grid,
                                     std::span<const std::string> class_sequence, Rng& rng,
                                     const std::string& doc_id);

} // namespace hanjakit
