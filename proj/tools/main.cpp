// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

// hanjakit command-line entry point: corpus ingest/validation, deterministic
// splits, crop augmentation ladders, dataset statistics, COCO interop,
// detection scoring, reading-order serialization, and synthetic page
// generation.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hanjakit/augment.hpp"
#include "hanjakit/coco.hpp"
#include "hanjakit/corpus.hpp"
#include "hanjakit/errors.hpp"
#include "hanjakit/eval.hpp"
#include "hanjakit/image_io.hpp"
#include "hanjakit/imbalance.hpp"
#include "hanjakit/manifest.hpp"
#include "hanjakit/parallel.hpp"
#include "hanjakit/reading_order.hpp"
#include "hanjakit/rng.hpp"
#include "hanjakit/variants.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hanjakit;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open output file: " + path.string());
    }
    out << content;
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

// Images resolve relative to the label directory unless overridden.
fs::path resolve_images_dir(const std::string& corpus_path, const std::string& images_dir) {
    if (!images_dir.empty()) {
        return images_dir;
    }
    fs::path p(corpus_path);
    return fs::is_directory(p) ? p : p.parent_path();
}

ImageProvider file_image_provider(const fs::path& images_dir) {
    return [images_dir](const DocumentRecord& doc) {
        fs::path path = images_dir / doc.image_path;
        if (!fs::exists(path)) {
            throw IoError("image for document " + doc.doc_id + " not found: " + path.string());
        }
        return load_image(path);
    };
}

Corpus load_corpus_checked(const std::string& path, const std::string& universe_file) {
    Corpus corpus = load_corpus(path);
    if (!universe_file.empty()) {
        corpus.class_universe = load_class_universe(universe_file);
    }
    return corpus;
}

void require_valid(const Corpus& corpus) {
    ValidationReport report = validate_corpus(corpus);
    if (!report.valid()) {
        throw ValidationError("corpus has " + std::to_string(report.error_count()) +
                              " validation error(s); run the validate command for details");
    }
}

std::map<std::string, std::vector<Detection>> group_by_doc(std::vector<Detection> detections) {
    std::map<std::string, std::vector<Detection>> grouped;
    for (Detection& det : detections) {
        grouped[det.doc_id].push_back(std::move(det));
    }
    return grouped;
}

// Writes one augmented dataset: originals (unless crops_only) plus all crop
// images and label files. File contents depend only on (corpus, aug), never
// on the worker count.
void materialize_augmented(const Corpus& corpus, const AugmentedCorpus& aug,
                           const fs::path& images_dir, const fs::path& out_dir, bool crops_only,
                           int jobs) {
    fs::create_directories(out_dir);
    const std::size_t n_docs = corpus.documents.size();
    parallel_for(n_docs, jobs, [&](std::size_t d) {
        const DocumentRecord& doc = corpus.documents[d];
        fs::path src_image = images_dir / doc.image_path;
        if (!fs::exists(src_image)) {
            throw IoError("image for document " + doc.doc_id + " not found: " +
                          src_image.string());
        }
        Raster raster = load_image(src_image);
        if (raster.width != doc.image_width || raster.height != doc.image_height) {
            throw ValidationError("document " + doc.doc_id + ": label file says " +
                                  std::to_string(doc.image_width) + "x" +
                                  std::to_string(doc.image_height) + " but image is " +
                                  std::to_string(raster.width) + "x" +
                                  std::to_string(raster.height));
        }

        if (!crops_only) {
            std::string ext = fs::path(doc.image_path).extension().string();
            if (ext.empty()) {
                ext = ".png";
            }
            std::string image_name = doc.doc_id + ext;
            write_file(out_dir / image_name, read_file(src_image));
            DocumentRecord copy = doc;
            copy.image_path = image_name;
            write_file(out_dir / (doc.doc_id + ".json"), serialize_document(copy));
        }

        for (int i = 0; i < aug.k; ++i) {
            const CropEntry& entry = aug.crops[d * std::size_t(aug.k) + std::size_t(i)];
            save_png(crop_image(raster, entry.region), out_dir / entry.record.image_path);
            write_file(out_dir / (entry.record.doc_id + ".json"),
                       serialize_document(entry.record));
        }
    });
}

RunManifest base_manifest(const std::string& command) {
    RunManifest manifest;
    manifest.command = command;
    return manifest;
}

// --- subcommand options ---

struct IngestOpts {
    std::string labels, universe, out;
};

struct ValidateOpts {
    std::string corpus, universe;
};

struct SplitOpts {
    std::string corpus, out;
    double val_fraction = 0.12;
    std::uint64_t seed = 0;
};

struct AugmentOpts {
    std::string corpus, images, out;
    int k = 1;
    std::uint64_t seed = 0;
    int jobs = 1;
    bool crops_only = false;
    CropParams params;
};

struct StatsOpts {
    std::string corpus, universe, out;
};

struct ExportCocoOpts {
    std::string corpus, categories, out;
};

struct EvalOpts {
    std::string corpus, detections, format = "native", coco_dataset, variants, out;
    double iou_threshold = 0.5;
    int jobs = 1;
};

struct OrderOpts {
    std::string corpus, detections, out;
    double gap_factor = 1.5;
    bool left_to_right = false;
    int jobs = 1;
};

struct SynthOpts {
    std::string bank, corpus, images, save_bank, universe, out;
    int pages = 1;
    int columns = 8, rows = 10;
    int cell_w = 64, cell_h = 64;
    int margin = 16;
    double glyph_fill = 0.5;
    double jitter = 0.05;
    std::uint64_t seed = 0;
    bool cover_missing = false;
    int jobs = 1;
};

struct LadderOpts {
    std::string corpus, images, out;
    std::vector<int> ks = {1, 3, 5, 10, 30, 50, 100};
    std::uint64_t seed = 0;
    int jobs = 1;
    bool crops_only = false;
    CropParams params;
};

int run_ingest(const IngestOpts& opt) {
    Corpus corpus = load_corpus_dir(opt.labels);
    if (!opt.universe.empty()) {
        corpus.class_universe = load_class_universe(opt.universe);
    }
    ValidationReport report = validate_corpus(corpus);
    if (!report.valid()) {
        throw ValidationError("corpus has " + std::to_string(report.error_count()) +
                              " validation error(s); run the validate command for details");
    }
    fs::create_directories(opt.out);
    write_file(fs::path(opt.out) / "corpus.json", serialize_corpus(corpus));
    write_file(fs::path(opt.out) / "validation.json", serialize_validation_report(report));

    RunManifest manifest = base_manifest("ingest");
    manifest.parameters["labels"] = opt.labels;
    manifest.inputs = {opt.labels};
    manifest.outputs = {"corpus.json", "validation.json"};
    for (const Finding& f : report.findings) {
        manifest.warnings.push_back(std::string(finding_kind_name(f.kind)) + ": " + f.doc_id +
                                    "/" + f.annotation_id);
    }
    manifest.write(opt.out);
    std::cout << "ingested " << corpus.documents.size() << " documents ("
              << report.warning_count() << " warnings)\n";
    return 0;
}

int run_validate(const ValidateOpts& opt) {
    Corpus corpus = load_corpus_checked(opt.corpus, opt.universe);
    ValidationReport report = validate_corpus(corpus);
    std::cout << serialize_validation_report(report);
    return report.findings.empty() ? 0 : 3;
}

int run_split(const SplitOpts& opt) {
    Corpus corpus = load_corpus(opt.corpus);
    SplitResult split = split_corpus(corpus, opt.val_fraction, opt.seed);
    fs::create_directories(opt.out);
    write_file(fs::path(opt.out) / "split.json", serialize_split(split));

    RunManifest manifest = base_manifest("split");
    manifest.seeded = true;
    manifest.seed = opt.seed;
    manifest.generator = kGeneratorId;
    manifest.parameters["val_fraction"] = std::to_string(opt.val_fraction);
    manifest.inputs = {opt.corpus};
    manifest.outputs = {"split.json"};
    manifest.write(opt.out);
    std::cout << "train " << split.train.size() << " / val " << split.val.size() << "\n";
    return 0;
}

void fill_augment_manifest(RunManifest& manifest, const AugmentedCorpus& aug,
                           const std::string& corpus_path, bool crops_only) {
    manifest.seeded = true;
    manifest.seed = aug.seed;
    manifest.generator = aug.generator;
    manifest.parameters["k"] = std::to_string(aug.k);
    manifest.parameters["min_fraction"] = std::to_string(aug.params.min_fraction);
    manifest.parameters["max_fraction"] = std::to_string(aug.params.max_fraction);
    manifest.parameters["min_crop_px"] = std::to_string(aug.params.min_crop_px);
    manifest.parameters["visibility_tau"] = std::to_string(aug.params.visibility_tau);
    manifest.parameters["crops_only"] = crops_only ? "true" : "false";
    manifest.inputs = {corpus_path};
    manifest.warnings = aug.warnings;
}

int run_augment(const AugmentOpts& opt) {
    Corpus corpus = load_corpus(opt.corpus);
    AugmentedCorpus aug = augment_corpus(corpus, opt.k, opt.params, opt.seed, opt.jobs);
    fs::path images_dir = resolve_images_dir(opt.corpus, opt.images);
    materialize_augmented(corpus, aug, images_dir, opt.out, opt.crops_only, opt.jobs);

    RunManifest manifest = base_manifest("augment");
    fill_augment_manifest(manifest, aug, opt.corpus, opt.crops_only);
    manifest.write(opt.out);

    std::uint64_t total = opt.crops_only ? std::uint64_t(corpus.documents.size()) * opt.k
                                         : expected_total(corpus.documents.size(), opt.k);
    std::cout << "wrote " << total << " image/label pairs to " << opt.out << "\n";
    return 0;
}

int run_stats(const StatsOpts& opt) {
    Corpus corpus = load_corpus_checked(opt.corpus, opt.universe);
    ClassHistogram hist = class_inventory(corpus);

    json counts = json::object();
    for (const auto& [cls, count] : hist.counts) {
        counts[cls] = count;
    }
    json j{{"documents", corpus.documents.size()},
           {"total_annotations", hist.total},
           {"distinct_classes", hist.counts.size()},
           {"counts", counts}};
    if (corpus.class_universe) {
        ImbalanceReport report = imbalance_metrics(hist, *corpus.class_universe);
        j["imbalance"] = json::parse(report.to_json_string());
    }

    fs::create_directories(opt.out);
    write_file(fs::path(opt.out) / "stats.json", j.dump(2) + "\n");

    RunManifest manifest = base_manifest("stats");
    manifest.inputs = {opt.corpus};
    manifest.outputs = {"stats.json"};
    manifest.write(opt.out);

    std::cout << "documents " << corpus.documents.size() << ", annotations " << hist.total
              << ", classes " << hist.counts.size() << "\n";
    if (corpus.class_universe) {
        std::cout << "universe " << corpus.class_universe->size() << ", missing "
                  << j["imbalance"]["missing_classes"].get<std::size_t>() << ", gini "
                  << j["imbalance"]["gini"].get<double>() << "\n";
    }
    return 0;
}

int run_export_coco(const ExportCocoOpts& opt) {
    Corpus corpus = load_corpus(opt.corpus);
    require_valid(corpus);
    std::optional<std::vector<std::string>> categories;
    if (!opt.categories.empty()) {
        categories = load_category_list(opt.categories);
    }
    fs::create_directories(opt.out);
    write_file(fs::path(opt.out) / "dataset.json", export_coco(corpus, categories));

    RunManifest manifest = base_manifest("export-coco");
    manifest.inputs = {opt.corpus};
    manifest.outputs = {"dataset.json"};
    manifest.write(opt.out);
    std::cout << "exported " << corpus.documents.size() << " images\n";
    return 0;
}

int run_eval(const EvalOpts& opt) {
    Corpus corpus = load_corpus(opt.corpus);
    require_valid(corpus);

    std::vector<Detection> detections;
    if (opt.format == "native") {
        detections = import_detections(read_file(opt.detections));
    } else if (opt.format == "coco") {
        if (opt.coco_dataset.empty()) {
            throw Error("--format coco requires --coco-dataset", "bad_argument");
        }
        detections = import_detections_coco(read_file(opt.detections),
                                            read_file(opt.coco_dataset));
    } else {
        throw Error("unknown detections format \"" + opt.format + "\"", "bad_argument");
    }
    check_detection_doc_ids(detections, corpus);

    EquivalenceIndex index;
    bool have_index = !opt.variants.empty();
    if (have_index) {
        index = compile_equivalence(load_variant_table_file(opt.variants));
    }

    auto grouped = group_by_doc(std::move(detections));
    static const std::vector<Detection> kNoDetections;

    struct DocResult {
        EvalReport report;
        std::vector<json> changed;
    };
    std::vector<DocResult> results(corpus.documents.size());
    parallel_for(corpus.documents.size(), opt.jobs, [&](std::size_t d) {
        const DocumentRecord& doc = corpus.documents[d];
        auto it = grouped.find(doc.doc_id);
        const std::vector<Detection>& dets = it == grouped.end() ? kNoDetections : it->second;
        Matching matching = match_detections(dets, doc.annotations, opt.iou_threshold);
        results[d].report =
            score(matching, dets, doc.annotations, have_index ? &index : nullptr);
        if (have_index) {
            for (const MatchPair& pair : matching.pairs) {
                const std::string& det_label = dets[pair.det_index].label;
                const std::string& gt_label = doc.annotations[pair.gt_index].label;
                if (det_label != gt_label && index.are_equivalent(det_label, gt_label)) {
                    results[d].changed.push_back({{"doc_id", doc.doc_id},
                                                  {"det_label", det_label},
                                                  {"gt_label", gt_label},
                                                  {"gt_id", doc.annotations[pair.gt_index].id}});
                }
            }
        }
    });

    EvalReport total;
    json changed = json::array();
    for (const DocResult& r : results) {
        total += r.report;
        for (const json& c : r.changed) {
            changed.push_back(c);
        }
    }

    fs::create_directories(opt.out);
    write_file(fs::path(opt.out) / "report.json", total.to_json_string());
    write_file(fs::path(opt.out) / "report.txt", total.to_table());
    RunManifest manifest = base_manifest("eval");
    manifest.parameters["iou_threshold"] = std::to_string(opt.iou_threshold);
    manifest.parameters["format"] = opt.format;
    manifest.inputs = {opt.corpus, opt.detections};
    manifest.outputs = {"report.json", "report.txt"};
    if (have_index) {
        CorrectionReport correction;
        correction.report = total;
        write_file(fs::path(opt.out) / "correction.csv", correction.to_csv());
        json correction_json{{"delta", correction.delta()}, {"changed", changed}};
        write_file(fs::path(opt.out) / "correction.json", correction_json.dump(2) + "\n");
        manifest.outputs.push_back("correction.csv");
        manifest.outputs.push_back("correction.json");
        manifest.parameters["variants"] = opt.variants;
    }
    manifest.write(opt.out);

    std::cout << total.to_table();
    return 0;
}

int run_order(const OrderOpts& opt) {
    Corpus corpus = load_corpus(opt.corpus);
    require_valid(corpus);

    std::map<std::string, std::vector<Detection>> grouped;
    bool from_detections = !opt.detections.empty();
    if (from_detections) {
        std::vector<Detection> detections = import_detections(read_file(opt.detections));
        check_detection_doc_ids(detections, corpus);
        grouped = group_by_doc(std::move(detections));
    }

    fs::create_directories(opt.out);
    std::vector<std::string> warnings(corpus.documents.size());
    parallel_for(corpus.documents.size(), opt.jobs, [&](std::size_t d) {
        const DocumentRecord& doc = corpus.documents[d];
        std::vector<OrderedBox> boxes;
        if (from_detections) {
            auto it = grouped.find(doc.doc_id);
            if (it != grouped.end()) {
                for (std::size_t i = 0; i < it->second.size(); ++i) {
                    boxes.push_back({it->second[i].bbox, it->second[i].label, i});
                }
            }
        } else {
            for (std::size_t i = 0; i < doc.annotations.size(); ++i) {
                boxes.push_back({doc.annotations[i].bbox, doc.annotations[i].label, i});
            }
        }

        fs::path text_path = fs::path(opt.out) / (doc.doc_id + ".txt");
        fs::path sidecar_path = fs::path(opt.out) / (doc.doc_id + ".order.json");
        if (boxes.empty()) {
            warnings[d] = "document " + doc.doc_id + " has no boxes to order";
            write_file(text_path, "");
            write_file(sidecar_path,
                       json{{"doc_id", doc.doc_id}, {"characters", json::array()}}.dump(2) +
                           "\n");
            return;
        }

        // Column order is fixed right-to-left for cursive documents.
        bool right_to_left = doc.style == "cursive" || !opt.left_to_right;
        ColumnLayout layout = cluster_columns(std::move(boxes), opt.gap_factor, right_to_left);
        write_file(text_path, sequence_text(layout) + "\n");

        json characters = json::array();
        for (std::size_t c = 0; c < layout.columns.size(); ++c) {
            for (std::size_t i = 0; i < layout.columns[c].size(); ++i) {
                const OrderedBox& b = layout.columns[c][i];
                characters.push_back({{"char", b.label},
                                      {"column", c},
                                      {"index_in_column", i},
                                      {"bbox", {b.box.x, b.box.y, b.box.w, b.box.h}},
                                      {"source_index", b.source_index}});
            }
        }
        write_file(sidecar_path,
                   json{{"doc_id", doc.doc_id}, {"characters", characters}}.dump(2) + "\n");
    });

    RunManifest manifest = base_manifest("order");
    manifest.parameters["gap_factor"] = std::to_string(opt.gap_factor);
    manifest.parameters["source"] = from_detections ? "detections" : "annotations";
    manifest.inputs = {opt.corpus};
    for (const std::string& w : warnings) {
        if (!w.empty()) {
            manifest.warnings.push_back(w);
        }
    }
    manifest.write(opt.out);
    std::cout << "ordered " << corpus.documents.size() << " documents\n";
    return 0;
}

int run_synth(const SynthOpts& opt) {
    GlyphBank bank;
    if (!opt.bank.empty()) {
        bank = GlyphBank::load(opt.bank);
    } else if (!opt.corpus.empty()) {
        Corpus corpus = load_corpus(opt.corpus);
        require_valid(corpus);
        fs::path images_dir = resolve_images_dir(opt.corpus, opt.images);
        bank = harvest_glyphs(corpus, file_image_provider(images_dir), nullptr, opt.jobs);
    } else {
        throw Error("synth requires --bank or --corpus", "bad_argument");
    }
    if (bank.glyph_count() == 0) {
        throw Error("glyph bank is empty", "bad_argument");
    }
    if (!opt.save_bank.empty()) {
        bank.save(opt.save_bank);
    }

    GridSpec grid;
    grid.columns = opt.columns;
    grid.rows = opt.rows;
    grid.cell_width = opt.cell_w;
    grid.cell_height = opt.cell_h;
    grid.margin = opt.margin;
    grid.glyph_fill = opt.glyph_fill;
    grid.jitter_frac = opt.jitter;

    const std::set<std::string> class_set = bank.classes();
    std::vector<std::string> bank_classes(class_set.begin(), class_set.end());
    std::vector<std::vector<std::string>> sequences;
    std::vector<std::string> warnings;

    if (opt.cover_missing) {
        if (opt.corpus.empty() || opt.universe.empty()) {
            throw Error("--cover-missing requires --corpus and --universe", "bad_argument");
        }
        Corpus corpus = load_corpus_checked(opt.corpus, opt.universe);
        std::set<std::string> missing =
            missing_classes(class_inventory(corpus), *corpus.class_universe);
        std::vector<std::string> coverable;
        std::size_t uncoverable = 0;
        for (const std::string& cls : missing) {
            if (bank.glyphs.count(cls) && !bank.glyphs.at(cls).empty()) {
                coverable.push_back(cls);
            } else {
                ++uncoverable;
            }
        }
        if (uncoverable > 0) {
            warnings.push_back(std::to_string(uncoverable) +
                               " missing class(es) have no glyphs in the bank");
        }
        for (std::size_t start = 0; start < coverable.size();
             start += std::size_t(grid.capacity())) {
            std::size_t end = std::min(coverable.size(), start + std::size_t(grid.capacity()));
            sequences.emplace_back(coverable.begin() + std::ptrdiff_t(start),
                                   coverable.begin() + std::ptrdiff_t(end));
        }
        if (sequences.empty()) {
            warnings.push_back("no coverable missing classes; nothing to compose");
        }
    }

    auto page_id = [](std::size_t p) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "synth_%04zu", p);
        return std::string(buf);
    };

    if (!opt.cover_missing) {
        // Random pages drawn from the bank's classes.
        for (int p = 0; p < opt.pages; ++p) {
            Rng rng(derive_subseed(opt.seed, fnv1a64(page_id(std::size_t(p))), 0));
            std::vector<std::string> seq;
            seq.reserve(std::size_t(grid.capacity()));
            for (int i = 0; i < grid.capacity(); ++i) {
                seq.push_back(bank_classes[rng.bounded(bank_classes.size())]);
            }
            sequences.push_back(std::move(seq));
        }
    }

    fs::create_directories(opt.out);
    std::vector<std::string> page_ids(sequences.size());
    for (std::size_t p = 0; p < sequences.size(); ++p) {
        page_ids[p] = page_id(p);
    }
    parallel_for(sequences.size(), opt.jobs, [&](std::size_t p) {
        // Composition consumes a per-page stream; the sequence itself was
        // chosen above, so page content is order-independent.
        Rng rng(derive_subseed(opt.seed, fnv1a64(page_ids[p]), 1));
        SyntheticPage page = compose_synthetic_page(bank, grid, sequences[p], rng, page_ids[p]);
        save_png(page.image, fs::path(opt.out) / page.record.image_path);
        write_file(fs::path(opt.out) / (page.record.doc_id + ".json"),
                   serialize_document(page.record));
    });

    RunManifest manifest = base_manifest("synth");
    manifest.seeded = true;
    manifest.seed = opt.seed;
    manifest.generator = kGeneratorId;
    manifest.parameters["grid"] = std::to_string(grid.columns) + "x" + std::to_string(grid.rows);
    manifest.parameters["cell"] =
        std::to_string(grid.cell_width) + "x" + std::to_string(grid.cell_height);
    manifest.parameters["margin"] = std::to_string(grid.margin);
    manifest.parameters["glyph_fill"] = std::to_string(grid.glyph_fill);
    manifest.parameters["jitter_frac"] = std::to_string(grid.jitter_frac);
    manifest.parameters["pages"] = std::to_string(sequences.size());
    manifest.parameters["cover_missing"] = opt.cover_missing ? "true" : "false";
    manifest.warnings = warnings;
    manifest.write(opt.out);

    std::cout << "composed " << sequences.size() << " page(s)\n";
    return 0;
}

int run_ladder(const LadderOpts& opt) {
    Corpus corpus = load_corpus(opt.corpus);
    fs::path images_dir = resolve_images_dir(opt.corpus, opt.images);
    fs::create_directories(opt.out);

    RunManifest top = base_manifest("ladder");
    top.seeded = true;
    top.seed = opt.seed;
    top.generator = kGeneratorId;
    top.inputs = {opt.corpus};

    for (int k : opt.ks) {
        AugmentedCorpus aug = augment_corpus(corpus, k, opt.params, opt.seed, opt.jobs);
        fs::path subdir = fs::path(opt.out) / ("x" + std::to_string(k));
        materialize_augmented(corpus, aug, images_dir, subdir, opt.crops_only, opt.jobs);

        RunManifest manifest = base_manifest("ladder");
        fill_augment_manifest(manifest, aug, opt.corpus, opt.crops_only);
        manifest.parameters["ladder_step"] = "x" + std::to_string(k);
        manifest.write(subdir);

        std::string step = "x" + std::to_string(k);
        top.outputs.push_back(step);
        std::cout << step << ": " << expected_total(corpus.documents.size(), std::uint64_t(k))
                  << " image/label pairs\n";
    }
    std::ostringstream ks;
    for (std::size_t i = 0; i < opt.ks.size(); ++i) {
        ks << (i ? "," : "") << opt.ks[i];
    }
    top.parameters["ks"] = ks.str();
    top.write(opt.out);
    return 0;
}

void emit_error_json(const std::string& code, const std::string& message) {
    json j{{"error", code}, {"message", message}};
    std::cerr << j.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"corpus engineering and evaluation toolkit for classical hanja OCR"};
    app.require_subcommand(1);
    app.set_config("--config");
    app.set_version_flag("--version", std::string("hanjakit ") + kVersion);

    IngestOpts ingest;
    auto* cmd_ingest = app.add_subcommand("ingest", "parse and validate a label directory");
    cmd_ingest->add_option("--labels", ingest.labels, "directory of per-document label files")
        ->required();
    cmd_ingest->add_option("--universe", ingest.universe, "class universe file (json or txt)");
    cmd_ingest->add_option("--out", ingest.out, "output directory")->required();

    ValidateOpts validate;
    auto* cmd_validate = app.add_subcommand("validate", "report corpus integrity findings");
    cmd_validate->add_option("--corpus", validate.corpus, "corpus directory or corpus.json")
        ->required();
    cmd_validate->add_option("--universe", validate.universe, "class universe file");

    SplitOpts split;
    auto* cmd_split = app.add_subcommand("split", "deterministic train/validation split");
    cmd_split->add_option("--corpus", split.corpus)->required();
    cmd_split->add_option("--val-fraction", split.val_fraction, "validation fraction")
        ->capture_default_str();
    cmd_split->add_option("--seed", split.seed)->capture_default_str();
    cmd_split->add_option("--out", split.out)->required();

    AugmentOpts augment;
    auto* cmd_augment = app.add_subcommand("augment", "materialize random crop augmentation");
    cmd_augment->add_option("--corpus", augment.corpus)->required();
    cmd_augment->add_option("--images", augment.images, "image directory (default: corpus dir)");
    cmd_augment->add_option("--k", augment.k, "crops per document")->capture_default_str();
    cmd_augment->add_option("--seed", augment.seed)->capture_default_str();
    cmd_augment->add_option("--jobs", augment.jobs)->capture_default_str();
    cmd_augment->add_option("--min-fraction", augment.params.min_fraction)
        ->capture_default_str();
    cmd_augment->add_option("--max-fraction", augment.params.max_fraction)
        ->capture_default_str();
    cmd_augment->add_option("--min-crop", augment.params.min_crop_px)->capture_default_str();
    cmd_augment->add_option("--tau", augment.params.visibility_tau,
                            "minimum visible-area fraction for an annotation to survive")
        ->capture_default_str();
    cmd_augment->add_flag("--crops-only", augment.crops_only, "do not copy originals");
    cmd_augment->add_option("--out", augment.out)->required();

    StatsOpts stats;
    auto* cmd_stats = app.add_subcommand("stats", "class histogram and imbalance metrics");
    cmd_stats->add_option("--corpus", stats.corpus)->required();
    cmd_stats->add_option("--universe", stats.universe);
    cmd_stats->add_option("--out", stats.out)->required();

    ExportCocoOpts export_coco_opt;
    auto* cmd_export = app.add_subcommand("export-coco", "write a COCO detection dataset");
    cmd_export->add_option("--corpus", export_coco_opt.corpus)->required();
    cmd_export->add_option("--categories", export_coco_opt.categories,
                           "fixed category list (json array of names or coco categories)");
    cmd_export->add_option("--out", export_coco_opt.out)->required();

    EvalOpts eval;
    auto* cmd_eval = app.add_subcommand("eval", "score detection results against ground truth");
    cmd_eval->add_option("--corpus", eval.corpus)->required();
    cmd_eval->add_option("--detections", eval.detections)->required();
    cmd_eval->add_option("--format", eval.format, "native or coco")->capture_default_str();
    cmd_eval->add_option("--coco-dataset", eval.coco_dataset,
                         "COCO dataset json for id resolution (coco format only)");
    cmd_eval->add_option("--variants", eval.variants, "variant table TSV");
    cmd_eval->add_option("--iou-threshold", eval.iou_threshold)->capture_default_str();
    cmd_eval->add_option("--jobs", eval.jobs)->capture_default_str();
    cmd_eval->add_option("--out", eval.out)->required();

    OrderOpts order;
    auto* cmd_order = app.add_subcommand("order", "emit reading-order text per document");
    cmd_order->add_option("--corpus", order.corpus)->required();
    cmd_order->add_option("--detections", order.detections,
                          "order detections instead of ground-truth annotations");
    cmd_order->add_option("--gap-factor", order.gap_factor)->capture_default_str();
    cmd_order->add_flag("--left-to-right", order.left_to_right,
                        "left-to-right column order for non-cursive documents");
    cmd_order->add_option("--jobs", order.jobs)->capture_default_str();
    cmd_order->add_option("--out", order.out)->required();

    SynthOpts synth;
    auto* cmd_synth = app.add_subcommand("synth", "compose synthetic annotated pages");
    cmd_synth->add_option("--bank", synth.bank, "glyph bank directory");
    cmd_synth->add_option("--corpus", synth.corpus, "corpus to harvest glyphs from");
    cmd_synth->add_option("--images", synth.images);
    cmd_synth->add_option("--save-bank", synth.save_bank, "persist the harvested glyph bank");
    cmd_synth->add_option("--universe", synth.universe);
    cmd_synth->add_option("--pages", synth.pages)->capture_default_str();
    cmd_synth->add_option("--columns", synth.columns)->capture_default_str();
    cmd_synth->add_option("--rows", synth.rows)->capture_default_str();
    cmd_synth->add_option("--cell-width", synth.cell_w)->capture_default_str();
    cmd_synth->add_option("--cell-height", synth.cell_h)->capture_default_str();
    cmd_synth->add_option("--margin", synth.margin)->capture_default_str();
    cmd_synth->add_option("--glyph-fill", synth.glyph_fill)->capture_default_str();
    cmd_synth->add_option("--jitter", synth.jitter)->capture_default_str();
    cmd_synth->add_option("--seed", synth.seed)->capture_default_str();
    cmd_synth->add_flag("--cover-missing", synth.cover_missing,
                        "compose pages covering classes missing from the corpus");
    cmd_synth->add_option("--jobs", synth.jobs)->capture_default_str();
    cmd_synth->add_option("--out", synth.out)->required();

    LadderOpts ladder;
    auto* cmd_ladder = app.add_subcommand("ladder", "generate the full augmentation ladder");
    cmd_ladder->add_option("--corpus", ladder.corpus)->required();
    cmd_ladder->add_option("--images", ladder.images);
    cmd_ladder->add_option("--ks", ladder.ks, "multipliers")->delimiter(',');
    cmd_ladder->add_option("--seed", ladder.seed)->capture_default_str();
    cmd_ladder->add_option("--jobs", ladder.jobs)->capture_default_str();
    cmd_ladder->add_option("--min-fraction", ladder.params.min_fraction)->capture_default_str();
    cmd_ladder->add_option("--max-fraction", ladder.params.max_fraction)->capture_default_str();
    cmd_ladder->add_option("--min-crop", ladder.params.min_crop_px)->capture_default_str();
    cmd_ladder->add_option("--tau", ladder.params.visibility_tau)->capture_default_str();
    cmd_ladder->add_flag("--crops-only", ladder.crops_only);
    cmd_ladder->add_option("--out", ladder.out)->required();

    try {
        app.parse(argc, argv);
        if (cmd_ingest->parsed()) return run_ingest(ingest);
        if (cmd_validate->parsed()) return run_validate(validate);
        if (cmd_split->parsed()) return run_split(split);
        if (cmd_augment->parsed()) return run_augment(augment);
        if (cmd_stats->parsed()) return run_stats(stats);
        if (cmd_export->parsed()) return run_export_coco(export_coco_opt);
        if (cmd_eval->parsed()) return run_eval(eval);
        if (cmd_order->parsed()) return run_order(order);
        if (cmd_synth->parsed()) return run_synth(synth);
        if (cmd_ladder->parsed()) return run_ladder(ladder);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() != 0) {
            emit_error_json("cli_parse_error", e.what());
        }
        return app.exit(e);
    } catch (const Error& e) {
        emit_error_json(e.code(), e.what());
        return 1;
    } catch (const std::exception& e) {
        emit_error_json("internal_error", e.what());
        return 1;
    }
}
