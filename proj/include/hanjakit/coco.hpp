// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hanjakit/corpus.hpp"
#include "hanjakit/eval.hpp"

namespace hanjakit {

// COCO-style detection dataset. Categories are the sorted class list with
// ids 1..n unless a fixed category list is supplied. Image entries carry
// doc_id/style and annotations carry source_id as extra keys so that
// import_coco restores the corpus exactly; standard COCO consumers ignore
// them.
std::string export_coco(const Corpus& corpus,
                        const std::optional<std::vector<std::string>>& fixed_categories =
                            std::nullopt);

Corpus import_coco(std::string_view bytes);

// Category list file: either a JSON array of class names or a COCO-style
// {"categories": [{"id", "name"}, ...]} object.
std::vector<std::string> load_category_list(const std::filesystem::path& file);

// Native results format: [{"doc_id", "bbox", "label", "confidence"}, ...].
// Missing confidence defaults to 1.0.
std::vector<Detection> import_detections(std::string_view bytes);

// COCO results format: [{"image_id", "category_id", "bbox", "score"}, ...];
// image/category ids resolve through the accompanying COCO dataset file.
std::vector<Detection> import_detections_coco(std::string_view results_bytes,
                                              std::string_view dataset_bytes);

// Errors with the list of offenders when any detection references a doc_id
// absent from the corpus.
void check_detection_doc_ids(const std::vector<Detection>& detections, const Corpus& corpus);

std::string serialize_detections(const std::vector<Detection>& detections);

} // namespace hanjakit
