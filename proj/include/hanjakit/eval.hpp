// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "hanjakit/corpus.hpp"
#include "hanjakit/geometry.hpp"
#include "hanjakit/variants.hpp"

namespace hanjakit {

struct Detection {
    std::string doc_id;
    Rect bbox;
    std::string label;
    double confidence = 1.0;

    bool operator==(const Detection&) const = default;
};

struct MatchPair {
    std::size_t det_index = 0;
    std::size_t gt_index = 0;
    double iou = 0.0;
};

struct Matching {
    std::vector<MatchPair> pairs;
    std::vector<std::size_t> unmatched_detections;
    std::vector<std::size_t> unmatched_ground_truth;
    double iou_threshold = 0.5;
};

struct ClassStats {
    std::uint64_t support = 0;
    std::uint64_t raw_correct = 0;
    std::uint64_t variant_correct = 0;
};

// Counter-based so reports from independent documents merge associatively.
// Ratios with a zero denominator are reported as 1.0 (vacuous).
struct EvalReport {
    std::uint64_t gt_count = 0;
    std::uint64_t det_count = 0;
    std::uint64_t matched = 0;
    std::uint64_t raw_correct = 0;
    std::uint64_t variant_correct = 0;
    std::uint64_t confusable_hits = 0;
    std::map<std::string, ClassStats> per_class;

    double raw_accuracy() const { return ratio(raw_correct, gt_count); }
    double variant_accuracy() const { return ratio(variant_correct, gt_count); }
    double precision() const { return ratio(matched, det_count); }
    double recall() const { return ratio(matched, gt_count); }

    EvalReport& operator+=(const EvalReport& other);

    std::string to_json_string() const;
    std::string to_table() const;

private:
    static double ratio(std::uint64_t num, std::uint64_t den) {
        return den == 0 ? 1.0 : double(num) / double(den);
    }
};

// A matched pair whose verdict changes under equivalence normalization:
// labels differ but normalize to the same representative.
struct ChangedPair {
    std::size_t det_index = 0;
    std::size_t gt_index = 0;
    std::string det_label;
    std::string gt_label;
};

struct CorrectionReport {
    EvalReport report;
    std::vector<ChangedPair> changed;

    double delta() const { return report.variant_accuracy() - report.raw_accuracy(); }

    std::string to_csv() const; // class, support, raw, variant, delta
    std::string to_json_string() const;
};

// Greedy confidence-ordered assignment. Detections are taken in descending
// confidence (stable: ties keep input order); each takes its highest-IoU
// unmatched ground truth with iou >= threshold (IoU ties: lowest gt index).
// The result is maximal: no unmatched pair at or above the threshold remains.
Matching match_detections(std::span<const Detection> detections,
                          std::span<const CharAnnotation> ground_truth, double iou_threshold);

// Raw correct = matched pairs with identical labels; variant correct =
// matched pairs whose labels are equivalent under `index` (equal to raw when
// index is null). confusable_hits counts label-mismatched pairs that form a
// known confusable pair.
EvalReport score(const Matching& matching, std::span<const Detection> detections,
                 std::span<const CharAnnotation> ground_truth,
                 const EquivalenceIndex* index = nullptr);

// Paired raw/variant scoring plus the list of verdict-changing pairs.
CorrectionReport compare_policies(std::span<const Detection> detections,
                                  std::span<const CharAnnotation> ground_truth,
                                  const EquivalenceIndex& index, double iou_threshold);

} // namespace hanjakit
