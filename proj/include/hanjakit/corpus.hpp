// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hanjakit/geometry.hpp"

namespace hanjakit {

// One labeled character box inside a document image. `label` is the
// character class as a UTF-8 codepoint sequence, normally one codepoint.
struct CharAnnotation {
    std::string id;
    Rect bbox;
    std::string label;

    bool operator==(const CharAnnotation&) const = default;
};

struct DocumentRecord {
    std::string doc_id;
    std::string image_path;
    int image_width = 0;
    int image_height = 0;
    std::string style = "other"; // "cursive" | "other"
    std::vector<CharAnnotation> annotations;

    bool operator==(const DocumentRecord&) const = default;
};

struct Corpus {
    std::vector<DocumentRecord> documents;
    std::optional<std::set<std::string>> class_universe;
};

struct SplitResult {
    std::vector<std::string> train;
    std::vector<std::string> val;
    std::uint64_t seed = 0;
    double val_fraction = 0.0;

    bool operator==(const SplitResult&) const = default;
};

struct ClassHistogram {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;
};

enum class FindingKind {
    DuplicateDocId,
    DuplicateAnnotationId,
    BadImageDims,
    NonPositiveExtent,
    OutOfBoundsBox,
    EmptyLabel,
    UnknownClass,
    MultiCodepointLabel,
};

enum class Severity { Error, Warning };

struct Finding {
    FindingKind kind;
    Severity severity;
    std::string doc_id;
    std::string annotation_id;
    std::string detail;
};

struct ValidationReport {
    std::vector<Finding> findings;

    std::size_t error_count() const;
    std::size_t warning_count() const;
    // Valid means no error-severity findings; warnings do not invalidate.
    bool valid() const { return error_count() == 0; }
};

const char* finding_kind_name(FindingKind kind);

// Number of Unicode codepoints in a UTF-8 string (malformed bytes count 1).
std::size_t utf8_length(std::string_view s);

// --- label file I/O (canonical per-document JSON schema) ---

DocumentRecord parse_label_file(std::string_view bytes);
std::string serialize_document(const DocumentRecord& record);

// Loads either a directory of per-document label files (*.json, sorted by
// filename, manifest.json excluded) or a single combined corpus file.
Corpus load_corpus(const std::filesystem::path& path);
Corpus load_corpus_dir(const std::filesystem::path& dir);
Corpus load_corpus_file(const std::filesystem::path& file);
std::string serialize_corpus(const Corpus& corpus);

std::set<std::string> load_class_universe(const std::filesystem::path& file);

// --- operations ---

ValidationReport validate_corpus(const Corpus& corpus);

// Deterministic split: doc_ids sorted lexicographically, then a seeded
// Fisher-Yates shuffle; |val| = floor(N * val_fraction).
SplitResult split_corpus(const Corpus& corpus, double val_fraction, std::uint64_t seed);

ClassHistogram class_inventory(const Corpus& corpus);

std::string serialize_split(const SplitResult& split);
SplitResult parse_split(std::string_view bytes);

std::string serialize_validation_report(const ValidationReport& report);

} // namespace hanjakit
