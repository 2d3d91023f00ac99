// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#include "hanjakit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hanjakit/errors.hpp"
#include "hanjakit/rng.hpp"

namespace hanjakit {

using nlohmann::json;

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open file: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parse_json(std::string_view bytes) {
    try {
        return json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
}

Rect bbox_from_json(const json& arr) {
    if (!arr.is_array() || arr.size() != 4 || !std::all_of(arr.begin(), arr.end(), [](const json& v) {
            return v.is_number();
        })) {
        throw ParseError("bbox must be a [x, y, w, h] number array");
    }
    return Rect{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>(),
                arr[3].get<double>()};
}

json bbox_to_json(const Rect& r) { return json::array({r.x, r.y, r.w, r.h}); }

DocumentRecord record_from_json(const json& j) {
    DocumentRecord rec;
    try {
        rec.doc_id = j.at("doc_id").get<std::string>();
        const json& image = j.at("image");
        rec.image_path = image.at("path").get<std::string>();
        rec.image_width = image.at("width").get<int>();
        rec.image_height = image.at("height").get<int>();
        rec.style = j.at("style").get<std::string>();
        for (const json& a : j.at("annotations")) {
            CharAnnotation ann;
            ann.id = a.at("id").get<std::string>();
            ann.bbox = bbox_from_json(a.at("bbox"));
            ann.label = a.at("label").get<std::string>();
            rec.annotations.push_back(std::move(ann));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("label file schema violation: ") + e.what());
    }
    if (rec.style != "cursive" && rec.style != "other") {
        throw ParseError("style must be \"cursive\" or \"other\", got \"" + rec.style + "\"");
    }
    if (rec.image_width < 1 || rec.image_height < 1) {
        throw ValidationError("document " + rec.doc_id + ": image dimensions must be >= 1");
    }

    Rect image_rect{0.0, 0.0, double(rec.image_width), double(rec.image_height)};
    std::set<std::string> seen_ids;
    for (const CharAnnotation& ann : rec.annotations) {
        if (ann.bbox.w <= 0.0 || ann.bbox.h <= 0.0) {
            throw ValidationError("annotation " + ann.id + " in " + rec.doc_id +
                                      ": bbox extent must be positive",
                                  ann.id);
        }
        if (!contains(image_rect, ann.bbox)) {
            throw ValidationError("annotation " + ann.id + " in " + rec.doc_id +
                                      ": bbox outside image bounds",
                                  ann.id);
        }
        if (ann.label.empty()) {
            throw ValidationError("annotation " + ann.id + " in " + rec.doc_id + ": empty label",
                                  ann.id);
        }
        if (!seen_ids.insert(ann.id).second) {
            throw ValidationError("duplicate annotation id " + ann.id + " in " + rec.doc_id,
                                  ann.id);
        }
    }
    return rec;
}

json record_to_json(const DocumentRecord& rec) {
    json annotations = json::array();
    for (const CharAnnotation& ann : rec.annotations) {
        annotations.push_back(
            {{"id", ann.id}, {"bbox", bbox_to_json(ann.bbox)}, {"label", ann.label}});
    }
    return json{{"doc_id", rec.doc_id},
                {"image",
                 {{"path", rec.image_path},
                  {"width", rec.image_width},
                  {"height", rec.image_height}}},
                {"style", rec.style},
                {"annotations", annotations}};
}

} // namespace

std::size_t ValidationReport::error_count() const {
    return std::count_if(findings.begin(), findings.end(),
                         [](const Finding& f) { return f.severity == Severity::Error; });
}

std::size_t ValidationReport::warning_count() const {
    return findings.size() - error_count();
}

const char* finding_kind_name(FindingKind kind) {
    switch (kind) {
    case FindingKind::DuplicateDocId: return "DuplicateDocId";
    case FindingKind::DuplicateAnnotationId: return "DuplicateAnnotationId";
    case FindingKind::BadImageDims: return "BadImageDims";
    case FindingKind::NonPositiveExtent: return "NonPositiveExtent";
    case FindingKind::OutOfBoundsBox: return "OutOfBoundsBox";
    case FindingKind::EmptyLabel: return "EmptyLabel";
    case FindingKind::UnknownClass: return "UnknownClass";
    case FindingKind::MultiCodepointLabel: return "MultiCodepointLabel";
    }
    return "Unknown";
}

std::size_t utf8_length(std::string_view s) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size();) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t step = 1;
        if ((c & 0xE0) == 0xC0) step = 2;
        else if ((c & 0xF0) == 0xE0) step = 3;
        else if ((c & 0xF8) == 0xF0) step = 4;
        i += step;
        ++n;
    }
    return n;
}

DocumentRecord parse_label_file(std::string_view bytes) {
    return record_from_json(parse_json(bytes));
}

std::string serialize_document(const DocumentRecord& record) {
    return record_to_json(record).dump(2) + "\n";
}

Corpus load_corpus_dir(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file() || entry.path().extension() != ".json") {
            continue;
        }
        if (entry.path().filename() == "manifest.json") {
            continue;
        }
        files.push_back(entry.path());
    }
    // Sorted load order keeps corpus order independent of directory
    // enumeration order.
    std::sort(files.begin(), files.end());

    Corpus corpus;
    for (const auto& file : files) {
        try {
            corpus.documents.push_back(parse_label_file(read_file(file)));
        } catch (const Error& e) {
            throw Error(file.filename().string() + ": " + e.what(), e.code());
        }
    }
    return corpus;
}

Corpus load_corpus_file(const std::filesystem::path& file) {
    json j = parse_json(read_file(file));
    Corpus corpus;
    try {
        for (const json& doc : j.at("documents")) {
            corpus.documents.push_back(record_from_json(doc));
        }
        if (j.contains("class_universe")) {
            std::set<std::string> universe;
            for (const json& c : j.at("class_universe")) {
                universe.insert(c.get<std::string>());
            }
            corpus.class_universe = std::move(universe);
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("corpus file schema violation: ") + e.what());
    }
    return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
    if (std::filesystem::is_directory(path)) {
        return load_corpus_dir(path);
    }
    if (std::filesystem::is_regular_file(path)) {
        return load_corpus_file(path);
    }
    throw IoError("no such corpus path: " + path.string());
}

std::string serialize_corpus(const Corpus& corpus) {
    json docs = json::array();
    for (const DocumentRecord& rec : corpus.documents) {
        docs.push_back(record_to_json(rec));
    }
    json j{{"documents", docs}};
    if (corpus.class_universe) {
        j["class_universe"] = *corpus.class_universe;
    }
    return j.dump(2) + "\n";
}

std::set<std::string> load_class_universe(const std::filesystem::path& file) {
    std::string bytes = read_file(file);
    std::set<std::string> universe;
    if (file.extension() == ".json") {
        json j = parse_json(bytes);
        if (!j.is_array()) {
            throw ParseError("class universe JSON must be an array of strings");
        }
        for (const json& c : j) {
            universe.insert(c.get<std::string>());
        }
    } else {
        // Plain text, one class per line.
        std::istringstream in(bytes);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (!line.empty()) {
                universe.insert(line);
            }
        }
    }
    return universe;
}

ValidationReport validate_corpus(const Corpus& corpus) {
    ValidationReport report;
    auto add = [&](FindingKind kind, Severity sev, const std::string& doc_id,
                   const std::string& ann_id, std::string detail) {
        report.findings.push_back(Finding{kind, sev, doc_id, ann_id, std::move(detail)});
    };

    std::set<std::string> doc_ids;
    for (const DocumentRecord& rec : corpus.documents) {
        if (!doc_ids.insert(rec.doc_id).second) {
            add(FindingKind::DuplicateDocId, Severity::Error, rec.doc_id, {},
                "doc_id appears more than once");
        }
        if (rec.image_width < 1 || rec.image_height < 1) {
            add(FindingKind::BadImageDims, Severity::Error, rec.doc_id, {},
                "image dimensions must be >= 1");
        }
        Rect image_rect{0.0, 0.0, double(rec.image_width), double(rec.image_height)};
        std::set<std::string> ann_ids;
        for (const CharAnnotation& ann : rec.annotations) {
            if (!ann_ids.insert(ann.id).second) {
                add(FindingKind::DuplicateAnnotationId, Severity::Error, rec.doc_id, ann.id,
                    "annotation id appears more than once");
            }
            if (ann.bbox.w <= 0.0 || ann.bbox.h <= 0.0) {
                add(FindingKind::NonPositiveExtent, Severity::Error, rec.doc_id, ann.id,
                    "bbox extent must be positive");
            } else if (!contains(image_rect, ann.bbox)) {
                add(FindingKind::OutOfBoundsBox, Severity::Error, rec.doc_id, ann.id,
                    "bbox outside image bounds");
            }
            if (ann.label.empty()) {
                add(FindingKind::EmptyLabel, Severity::Error, rec.doc_id, ann.id, "empty label");
            } else {
                if (corpus.class_universe && !corpus.class_universe->count(ann.label)) {
                    add(FindingKind::UnknownClass, Severity::Error, rec.doc_id, ann.id,
                        "label \"" + ann.label + "\" not in class universe");
                }
                if (utf8_length(ann.label) > 1) {
                    add(FindingKind::MultiCodepointLabel, Severity::Warning, rec.doc_id, ann.id,
                        "label \"" + ann.label + "\" has more than one codepoint");
                }
            }
        }
    }
    return report;
}

SplitResult split_corpus(const Corpus& corpus, double val_fraction, std::uint64_t seed) {
    if (!(val_fraction > 0.0 && val_fraction < 1.0)) {
        throw Error("val_fraction must be in (0, 1)", "bad_argument");
    }
    const std::size_t n = corpus.documents.size();
    if (n < 2) {
        throw Error("cannot split a corpus with fewer than 2 documents", "bad_argument");
    }

    std::vector<std::string> ids;
    ids.reserve(n);
    for (const DocumentRecord& rec : corpus.documents) {
        ids.push_back(rec.doc_id);
    }
    // Sort before shuffling so the result does not depend on the order the
    // documents were enumerated in.
    std::sort(ids.begin(), ids.end());

    Rng rng(seed);
    rng.shuffle(ids);

    // floor(n * val_fraction), with an epsilon absorbing the binary
    // representation error of decimal fractions (100 * 0.12 must give 12,
    // not floor(11.999999999999998)).
    auto n_val = static_cast<std::size_t>(std::floor(
        static_cast<long double>(n) * static_cast<long double>(val_fraction) + 1e-9L));
    n_val = std::min(n_val, n - 1);

    SplitResult result;
    result.seed = seed;
    result.val_fraction = val_fraction;
    result.val.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_val));
    result.train.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_val), ids.end());
    std::sort(result.val.begin(), result.val.end());
    std::sort(result.train.begin(), result.train.end());
    return result;
}

ClassHistogram class_inventory(const Corpus& corpus) {
    ClassHistogram hist;
    for (const DocumentRecord& rec : corpus.documents) {
        for (const CharAnnotation& ann : rec.annotations) {
            ++hist.counts[ann.label];
            ++hist.total;
        }
    }
    return hist;
}

std::string serialize_split(const SplitResult& split) {
    json j{{"seed", split.seed},
           {"val_fraction", split.val_fraction},
           {"train", split.train},
           {"val", split.val}};
    return j.dump(2) + "\n";
}

SplitResult parse_split(std::string_view bytes) {
    json j = parse_json(bytes);
    SplitResult split;
    try {
        split.seed = j.at("seed").get<std::uint64_t>();
        split.val_fraction = j.at("val_fraction").get<double>();
        split.train = j.at("train").get<std::vector<std::string>>();
        split.val = j.at("val").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("split file schema violation: ") + e.what());
    }
    return split;
}

std::string serialize_validation_report(const ValidationReport& report) {
    json findings = json::array();
    for (const Finding& f : report.findings) {
        findings.push_back({{"kind", finding_kind_name(f.kind)},
                            {"severity", f.severity == Severity::Error ? "error" : "warning"},
                            {"doc_id", f.doc_id},
                            {"annotation_id", f.annotation_id},
                            {"detail", f.detail}});
    }
    json j{{"valid", report.valid()},
           {"errors", report.error_count()},
           {"warnings", report.warning_count()},
           {"findings", findings}};
    return j.dump(2) + "\n";
}

} // namespace hanjakit
