// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#include "hanjakit/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "hanjakit/errors.hpp"

namespace hanjakit {

using nlohmann::json;

Matching match_detections(std::span<const Detection> detections,
                          std::span<const CharAnnotation> ground_truth, double iou_threshold) {
    if (!detections.empty()) {
        const std::string& doc = detections.front().doc_id;
        for (const Detection& det : detections) {
            if (det.doc_id != doc) {
                throw Error("match_detections requires detections from a single document; got \"" +
                                doc + "\" and \"" + det.doc_id + "\"",
                            "mixed_doc_ids");
            }
        }
    }

    std::vector<std::size_t> order(detections.size());
    std::iota(order.begin(), order.end(), std::size_t(0));
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return detections[a].confidence > detections[b].confidence;
    });

    Matching matching;
    matching.iou_threshold = iou_threshold;
    std::vector<bool> gt_taken(ground_truth.size(), false);

    for (std::size_t det_index : order) {
        double best_iou = 0.0;
        std::size_t best_gt = ground_truth.size();
        for (std::size_t g = 0; g < ground_truth.size(); ++g) {
            if (gt_taken[g]) {
                continue;
            }
            double v = iou(detections[det_index].bbox, ground_truth[g].bbox);
            if (v >= iou_threshold && v > best_iou) {
                best_iou = v;
                best_gt = g;
            }
        }
        if (best_gt < ground_truth.size()) {
            gt_taken[best_gt] = true;
            matching.pairs.push_back({det_index, best_gt, best_iou});
        } else {
            matching.unmatched_detections.push_back(det_index);
        }
    }
    std::sort(matching.unmatched_detections.begin(), matching.unmatched_detections.end());
    for (std::size_t g = 0; g < ground_truth.size(); ++g) {
        if (!gt_taken[g]) {
            matching.unmatched_ground_truth.push_back(g);
        }
    }
    return matching;
}

EvalReport& EvalReport::operator+=(const EvalReport& other) {
    gt_count += other.gt_count;
    det_count += other.det_count;
    matched += other.matched;
    raw_correct += other.raw_correct;
    variant_correct += other.variant_correct;
    confusable_hits += other.confusable_hits;
    for (const auto& [cls, stats] : other.per_class) {
        ClassStats& mine = per_class[cls];
        mine.support += stats.support;
        mine.raw_correct += stats.raw_correct;
        mine.variant_correct += stats.variant_correct;
    }
    return *this;
}

EvalReport score(const Matching& matching, std::span<const Detection> detections,
                 std::span<const CharAnnotation> ground_truth, const EquivalenceIndex* index) {
    // Consistency checks: indices in range, no reuse, IoU at threshold.
    std::vector<bool> det_used(detections.size(), false);
    std::vector<bool> gt_used(ground_truth.size(), false);
    for (const MatchPair& pair : matching.pairs) {
        if (pair.det_index >= detections.size() || pair.gt_index >= ground_truth.size()) {
            throw InconsistentMatchingError("matching references out-of-range indices");
        }
        if (det_used[pair.det_index] || gt_used[pair.gt_index]) {
            throw InconsistentMatchingError("matching reuses a detection or ground truth");
        }
        det_used[pair.det_index] = true;
        gt_used[pair.gt_index] = true;
        if (iou(detections[pair.det_index].bbox, ground_truth[pair.gt_index].bbox) <
            matching.iou_threshold) {
            throw InconsistentMatchingError("matched pair below the IoU threshold");
        }
    }
    if (matching.pairs.size() + matching.unmatched_ground_truth.size() != ground_truth.size()) {
        throw InconsistentMatchingError("matching does not partition the ground truth");
    }

    EvalReport report;
    report.gt_count = ground_truth.size();
    report.det_count = detections.size();
    report.matched = matching.pairs.size();
    for (const CharAnnotation& gt : ground_truth) {
        ++report.per_class[gt.label].support;
    }
    for (const MatchPair& pair : matching.pairs) {
        const std::string& det_label = detections[pair.det_index].label;
        const std::string& gt_label = ground_truth[pair.gt_index].label;
        bool raw = det_label == gt_label;
        bool variant = raw || (index && index->are_equivalent(det_label, gt_label));
        if (raw) {
            ++report.raw_correct;
            ++report.per_class[gt_label].raw_correct;
        }
        if (variant) {
            ++report.variant_correct;
            ++report.per_class[gt_label].variant_correct;
        }
        if (!raw && index && index->is_confusable_pair(det_label, gt_label)) {
            ++report.confusable_hits;
        }
    }
    return report;
}

CorrectionReport compare_policies(std::span<const Detection> detections,
                                  std::span<const CharAnnotation> ground_truth,
                                  const EquivalenceIndex& index, double iou_threshold) {
    Matching matching = match_detections(detections, ground_truth, iou_threshold);
    CorrectionReport out;
    out.report = score(matching, detections, ground_truth, &index);
    for (const MatchPair& pair : matching.pairs) {
        const std::string& det_label = detections[pair.det_index].label;
        const std::string& gt_label = ground_truth[pair.gt_index].label;
        if (det_label != gt_label && index.are_equivalent(det_label, gt_label)) {
            out.changed.push_back({pair.det_index, pair.gt_index, det_label, gt_label});
        }
    }
    return out;
}

namespace {

json report_to_json(const EvalReport& r) {
    json per_class = json::object();
    for (const auto& [cls, stats] : r.per_class) {
        per_class[cls] = {{"support", stats.support},
                          {"raw_correct", stats.raw_correct},
                          {"variant_correct", stats.variant_correct}};
    }
    return json{{"gt_count", r.gt_count},
                {"det_count", r.det_count},
                {"matched", r.matched},
                {"raw_correct", r.raw_correct},
                {"variant_correct", r.variant_correct},
                {"confusable_hits", r.confusable_hits},
                {"raw_accuracy", r.raw_accuracy()},
                {"variant_accuracy", r.variant_accuracy()},
                {"precision", r.precision()},
                {"recall", r.recall()},
                {"per_class", per_class}};
}

} // namespace

std::string EvalReport::to_json_string() const { return report_to_json(*this).dump(2) + "\n"; }

std::string EvalReport::to_table() const {
    char line[160];
    std::ostringstream out;
    out << "metric              value\n";
    out << "------------------  ---------\n";
    std::snprintf(line, sizeof line, "%-18s  %9llu\n", "ground truth",
                  (unsigned long long)gt_count);
    out << line;
    std::snprintf(line, sizeof line, "%-18s  %9llu\n", "detections",
                  (unsigned long long)det_count);
    out << line;
    std::snprintf(line, sizeof line, "%-18s  %9llu\n", "matched", (unsigned long long)matched);
    out << line;
    std::snprintf(line, sizeof line, "%-18s  %9.4f\n", "raw accuracy", raw_accuracy());
    out << line;
    std::snprintf(line, sizeof line, "%-18s  %9.4f\n", "variant accuracy", variant_accuracy());
    out << line;
    std::snprintf(line, sizeof line, "%-18s  %9.4f\n", "precision", precision());
    out << line;
    std::snprintf(line, sizeof line, "%-18s  %9.4f\n", "recall", recall());
    out << line;
    std::snprintf(line, sizeof line, "%-18s  %9llu\n", "confusable hits",
                  (unsigned long long)confusable_hits);
    out << line;
    return out.str();
}

std::string CorrectionReport::to_csv() const {
    std::ostringstream out;
    out << "class,support,raw,variant,delta\n";
    char line[256];
    for (const auto& [cls, stats] : report.per_class) {
        double raw = stats.support ? double(stats.raw_correct) / double(stats.support) : 1.0;
        double variant =
            stats.support ? double(stats.variant_correct) / double(stats.support) : 1.0;
        std::snprintf(line, sizeof line, "%s,%llu,%.6f,%.6f,%.6f\n", cls.c_str(),
                      (unsigned long long)stats.support, raw, variant, variant - raw);
        out << line;
    }
    std::snprintf(line, sizeof line, "__overall__,%llu,%.6f,%.6f,%.6f\n",
                  (unsigned long long)report.gt_count, report.raw_accuracy(),
                  report.variant_accuracy(), delta());
    out << line;
    return out.str();
}

std::string CorrectionReport::to_json_string() const {
    json changed_json = json::array();
    for (const ChangedPair& c : changed) {
        changed_json.push_back({{"det_index", c.det_index},
                                {"gt_index", c.gt_index},
                                {"det_label", c.det_label},
                                {"gt_label", c.gt_label}});
    }
    json j{{"report", json::parse(report.to_json_string())},
           {"delta", delta()},
           {"changed", changed_json}};
    return j.dump(2) + "\n";
}

} // namespace hanjakit
