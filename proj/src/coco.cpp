// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#include "hanjakit/coco.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "hanjakit/errors.hpp"

namespace hanjakit {

using nlohmann::json;

namespace {

json parse_json(std::string_view bytes) {
    try {
        return json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), e.byte);
    }
}

Rect bbox_from_json(const json& arr) {
    if (!arr.is_array() || arr.size() != 4) {
        throw ParseError("bbox must be a [x, y, w, h] array");
    }
    return Rect{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>(),
                arr[3].get<double>()};
}

std::string stem_of(const std::string& file_name) {
    return std::filesystem::path(file_name).stem().string();
}

} // namespace

std::string export_coco(const Corpus& corpus,
                        const std::optional<std::vector<std::string>>& fixed_categories) {
    std::map<std::string, int> category_ids;
    json categories = json::array();
    if (fixed_categories) {
        int id = 1;
        for (const std::string& name : *fixed_categories) {
            category_ids.emplace(name, id);
            categories.push_back({{"id", id}, {"name", name}});
            ++id;
        }
    } else {
        std::set<std::string> classes;
        for (const DocumentRecord& doc : corpus.documents) {
            for (const CharAnnotation& ann : doc.annotations) {
                classes.insert(ann.label);
            }
        }
        int id = 1;
        for (const std::string& name : classes) {
            category_ids.emplace(name, id);
            categories.push_back({{"id", id}, {"name", name}});
            ++id;
        }
    }

    json images = json::array();
    json annotations = json::array();
    int image_id = 1;
    int annotation_id = 1;
    for (const DocumentRecord& doc : corpus.documents) {
        images.push_back({{"id", image_id},
                          {"file_name", doc.image_path},
                          {"width", doc.image_width},
                          {"height", doc.image_height},
                          {"doc_id", doc.doc_id},
                          {"style", doc.style}});
        for (const CharAnnotation& ann : doc.annotations) {
            auto it = category_ids.find(ann.label);
            if (it == category_ids.end()) {
                throw MissingClassError("class \"" + ann.label +
                                            "\" is not in the fixed category list",
                                        ann.label);
            }
            annotations.push_back({{"id", annotation_id},
                                   {"image_id", image_id},
                                   {"category_id", it->second},
                                   {"bbox", {ann.bbox.x, ann.bbox.y, ann.bbox.w, ann.bbox.h}},
                                   {"area", ann.bbox.area()},
                                   {"iscrowd", 0},
                                   {"source_id", ann.id}});
            ++annotation_id;
        }
        ++image_id;
    }

    json dataset{{"images", images}, {"annotations", annotations}, {"categories", categories}};
    return dataset.dump(2) + "\n";
}

Corpus import_coco(std::string_view bytes) {
    json dataset = parse_json(bytes);
    Corpus corpus;
    try {
        std::map<int, std::string> category_names;
        for (const json& cat : dataset.at("categories")) {
            category_names[cat.at("id").get<int>()] = cat.at("name").get<std::string>();
        }

        std::map<int, std::size_t> doc_index;
        for (const json& image : dataset.at("images")) {
            DocumentRecord rec;
            rec.image_path = image.at("file_name").get<std::string>();
            rec.image_width = image.at("width").get<int>();
            rec.image_height = image.at("height").get<int>();
            rec.doc_id = image.value("doc_id", stem_of(rec.image_path));
            rec.style = image.value("style", "other");
            doc_index[image.at("id").get<int>()] = corpus.documents.size();
            corpus.documents.push_back(std::move(rec));
        }

        for (const json& ann : dataset.at("annotations")) {
            int image_id = ann.at("image_id").get<int>();
            auto it = doc_index.find(image_id);
            if (it == doc_index.end()) {
                throw ParseError("annotation references unknown image_id " +
                                 std::to_string(image_id));
            }
            int category_id = ann.at("category_id").get<int>();
            auto cat = category_names.find(category_id);
            if (cat == category_names.end()) {
                throw ParseError("annotation references unknown category_id " +
                                 std::to_string(category_id));
            }
            CharAnnotation out;
            out.bbox = bbox_from_json(ann.at("bbox"));
            out.label = cat->second;
            out.id = ann.value("source_id", "a" + std::to_string(ann.at("id").get<int>()));
            corpus.documents[it->second].annotations.push_back(std::move(out));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("COCO dataset schema violation: ") + e.what());
    }
    return corpus;
}

std::vector<std::string> load_category_list(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw IoError("cannot open category file: " + file.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    json j = parse_json(buf.str());
    std::vector<std::string> names;
    try {
        if (j.is_array()) {
            for (const json& name : j) {
                names.push_back(name.get<std::string>());
            }
        } else {
            for (const json& cat : j.at("categories")) {
                names.push_back(cat.at("name").get<std::string>());
            }
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("category file schema violation: ") + e.what());
    }
    return names;
}

std::vector<Detection> import_detections(std::string_view bytes) {
    json j = parse_json(bytes);
    if (!j.is_array()) {
        throw ParseError("detection results must be a JSON array");
    }
    std::vector<Detection> out;
    out.reserve(j.size());
    try {
        for (const json& d : j) {
            Detection det;
            det.doc_id = d.at("doc_id").get<std::string>();
            det.bbox = bbox_from_json(d.at("bbox"));
            det.label = d.at("label").get<std::string>();
            det.confidence = d.value("confidence", 1.0);
            if (det.bbox.w <= 0.0 || det.bbox.h <= 0.0) {
                throw ParseError("detection bbox extent must be positive");
            }
            if (det.confidence < 0.0 || det.confidence > 1.0) {
                throw ParseError("detection confidence must be in [0, 1]");
            }
            out.push_back(std::move(det));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("detection results schema violation: ") + e.what());
    }
    return out;
}

std::vector<Detection> import_detections_coco(std::string_view results_bytes,
                                              std::string_view dataset_bytes) {
    json dataset = parse_json(dataset_bytes);
    std::map<int, std::string> image_docs;
    std::map<int, std::string> category_names;
    try {
        for (const json& image : dataset.at("images")) {
            std::string file_name = image.at("file_name").get<std::string>();
            image_docs[image.at("id").get<int>()] = image.value("doc_id", stem_of(file_name));
        }
        for (const json& cat : dataset.at("categories")) {
            category_names[cat.at("id").get<int>()] = cat.at("name").get<std::string>();
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("COCO dataset schema violation: ") + e.what());
    }

    json results = parse_json(results_bytes);
    if (!results.is_array()) {
        throw ParseError("COCO results must be a JSON array");
    }
    std::vector<Detection> out;
    out.reserve(results.size());
    try {
        for (const json& r : results) {
            int image_id = r.at("image_id").get<int>();
            auto doc = image_docs.find(image_id);
            if (doc == image_docs.end()) {
                throw ParseError("result references unknown image_id " +
                                 std::to_string(image_id));
            }
            int category_id = r.at("category_id").get<int>();
            auto cat = category_names.find(category_id);
            if (cat == category_names.end()) {
                throw ParseError("result references unknown category_id " +
                                 std::to_string(category_id));
            }
            Detection det;
            det.doc_id = doc->second;
            det.bbox = bbox_from_json(r.at("bbox"));
            det.label = cat->second;
            det.confidence = r.value("score", 1.0);
            out.push_back(std::move(det));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("COCO results schema violation: ") + e.what());
    }
    return out;
}

void check_detection_doc_ids(const std::vector<Detection>& detections, const Corpus& corpus) {
    std::set<std::string> known;
    for (const DocumentRecord& doc : corpus.documents) {
        known.insert(doc.doc_id);
    }
    std::set<std::string> offenders;
    for (const Detection& det : detections) {
        if (!known.count(det.doc_id)) {
            offenders.insert(det.doc_id);
        }
    }
    if (!offenders.empty()) {
        std::string list;
        for (const std::string& id : offenders) {
            if (!list.empty()) {
                list += ", ";
            }
            list += id;
        }
        throw UnknownDocIdError("detections reference unknown doc_ids: " + list);
    }
}

std::string serialize_detections(const std::vector<Detection>& detections) {
    json arr = json::array();
    for (const Detection& det : detections) {
        arr.push_back({{"doc_id", det.doc_id},
                       {"bbox", {det.bbox.x, det.bbox.y, det.bbox.w, det.bbox.h}},
                       {"label", det.label},
                       {"confidence", det.confidence}});
    }
    return arr.dump(2) + "\n";
}

} // namespace hanjakit
