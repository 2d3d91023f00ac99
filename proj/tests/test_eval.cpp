// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#include <doctest.h>

#include <algorithm>

#include "hanjakit/errors.hpp"
#include "hanjakit/eval.hpp"
#include "hanjakit/rng.hpp"
#include "oracles.hpp"

using namespace hanjakit;

namespace {

CharAnnotation gt(const std::string& id, double x, double y, double w, double h,
                  const std::string& label) {
    return CharAnnotation{id, Rect{x, y, w, h}, label};
}

Detection det(double x, double y, double w, double h, const std::string& label,
              double confidence = 1.0) {
    return Detection{"doc", Rect{x, y, w, h}, label, confidence};
}

// Random instance with <= max_boxes boxes per side, box geometry coarse
// enough that overlaps at every IoU level occur.
struct RandomInstance {
    std::vector<Detection> dets;
    std::vector<CharAnnotation> gts;
};

RandomInstance random_instance(Rng& rng, std::size_t max_boxes) {
    RandomInstance inst;
    std::size_t n_gt = rng.bounded(max_boxes + 1);
    std::size_t n_det = rng.bounded(max_boxes + 1);
    for (std::size_t g = 0; g < n_gt; ++g) {
        inst.gts.push_back(gt("g" + std::to_string(g), double(rng.bounded(60)),
                              double(rng.bounded(60)), double(5 + rng.bounded(30)),
                              double(5 + rng.bounded(30)),
                              std::string(1, char('a' + rng.bounded(4)))));
    }
    for (std::size_t d = 0; d < n_det; ++d) {
        inst.dets.push_back(det(double(rng.bounded(60)), double(rng.bounded(60)),
                                double(5 + rng.bounded(30)), double(5 + rng.bounded(30)),
                                std::string(1, char('a' + rng.bounded(4))),
                                double(rng.bounded(101)) / 100.0));
    }
    return inst;
}

} // namespace

TEST_CASE("iou basics") {
    Rect a{0, 0, 10, 10};
    CHECK(iou(a, a) == 1.0);
    CHECK(iou(a, Rect{20, 20, 5, 5}) == 0.0);
    // Half-offset boxes: intersection 50, union 150.
    CHECK(iou(a, Rect{5, 0, 10, 10}) == doctest::Approx(1.0 / 3.0));
    CHECK(iou(a, Rect{5, 0, 10, 10}) == iou(Rect{5, 0, 10, 10}, a));
}

TEST_CASE("iou is symmetric on random boxes") {
    Rng rng(1);
    for (int i = 0; i < 500; ++i) {
        Rect a{rng.uniform(0, 50), rng.uniform(0, 50), rng.uniform(1, 30), rng.uniform(1, 30)};
        Rect b{rng.uniform(0, 50), rng.uniform(0, 50), rng.uniform(1, 30), rng.uniform(1, 30)};
        CHECK(iou(a, b) == iou(b, a));
        CHECK(iou(a, b) >= 0.0);
        CHECK(iou(a, b) <= 1.0);
    }
}

TEST_CASE("match_detections matches a single overlapping pair") {
    std::vector<Detection> dets{det(0, 0, 10, 12, "a")}; // iou 10/12 vs the gt below
    std::vector<CharAnnotation> gts{gt("g0", 0, 0, 10, 10, "a")};
    Matching m = match_detections(dets, gts, 0.5);
    REQUIRE(m.pairs.size() == 1);
    CHECK(m.pairs[0].det_index == 0);
    CHECK(m.pairs[0].gt_index == 0);
    CHECK(m.unmatched_detections.empty());
    CHECK(m.unmatched_ground_truth.empty());
}

TEST_CASE("match_detections prefers the higher-confidence detection") {
    std::vector<Detection> dets{det(0, 0, 10, 10, "a", 0.4), det(1, 0, 10, 10, "b", 0.9)};
    std::vector<CharAnnotation> gts{gt("g0", 0, 0, 10, 10, "a")};
    Matching m = match_detections(dets, gts, 0.5);
    REQUIRE(m.pairs.size() == 1);
    CHECK(m.pairs[0].det_index == 1); // 0.9 wins
    REQUIRE(m.unmatched_detections.size() == 1);
    CHECK(m.unmatched_detections[0] == 0);
}

TEST_CASE("match_detections rejects mixed documents") {
    std::vector<Detection> dets{det(0, 0, 10, 10, "a"), det(0, 0, 10, 10, "a")};
    dets[1].doc_id = "other";
    std::vector<CharAnnotation> gts;
    CHECK_THROWS_AS(match_detections(dets, gts, 0.5), Error);
}

TEST_CASE("greedy matching is maximal and near the exhaustive optimum") {
    Rng rng(20240515);
    const double threshold = 0.5;
    std::size_t total_gap = 0;
    for (int trial = 0; trial < 300; ++trial) {
        RandomInstance inst = random_instance(rng, 6);
        Matching m = match_detections(inst.dets, inst.gts, threshold);

        // Maximality: no unmatched pair at or above the threshold remains.
        for (std::size_t d : m.unmatched_detections) {
            for (std::size_t g : m.unmatched_ground_truth) {
                CHECK(iou(inst.dets[d].bbox, inst.gts[g].bbox) < threshold);
            }
        }
        // Every matched pair clears the threshold.
        for (const MatchPair& pair : m.pairs) {
            CHECK(pair.iou >= threshold);
        }

        std::vector<std::vector<bool>> edges(inst.dets.size(),
                                             std::vector<bool>(inst.gts.size(), false));
        for (std::size_t d = 0; d < inst.dets.size(); ++d) {
            for (std::size_t g = 0; g < inst.gts.size(); ++g) {
                edges[d][g] = iou(inst.dets[d].bbox, inst.gts[g].bbox) >= threshold;
            }
        }
        std::size_t optimum = oracles::max_matching(edges);
        CHECK(m.pairs.size() <= optimum);
        total_gap += optimum - m.pairs.size();
    }
    MESSAGE("greedy-vs-optimal matched-count gap over 300 instances: ", total_gap);
}

TEST_CASE("score on perfect detections gives all ones") {
    std::vector<CharAnnotation> gts{gt("g0", 0, 0, 10, 10, "a"), gt("g1", 20, 0, 10, 10, "b")};
    std::vector<Detection> dets{det(0, 0, 10, 10, "a"), det(20, 0, 10, 10, "b")};
    Matching m = match_detections(dets, gts, 0.5);
    EvalReport report = score(m, dets, gts);
    CHECK(report.raw_accuracy() == 1.0);
    CHECK(report.variant_accuracy() == 1.0);
    CHECK(report.precision() == 1.0);
    CHECK(report.recall() == 1.0);
    CHECK(report.per_class.at("a").support == 1);
    CHECK(report.per_class.at("a").raw_correct == 1);
}

TEST_CASE("score counts a variant pair as variant-correct only") {
    EquivalenceIndex index = compile_equivalence(load_variant_table("variant\ta\tb\n"));
    std::vector<CharAnnotation> gts{gt("g0", 0, 0, 10, 10, "a")};
    std::vector<Detection> dets{det(0, 0, 10, 10, "b")};
    Matching m = match_detections(dets, gts, 0.5);
    EvalReport report = score(m, dets, gts, &index);
    CHECK(report.raw_accuracy() == 0.0);
    CHECK(report.variant_accuracy() == 1.0);
    CHECK(report.confusable_hits == 0);
}

TEST_CASE("score counts confusable mismatches") {
    EquivalenceIndex index = compile_equivalence(load_variant_table("confusable\ta\tb\n"));
    std::vector<CharAnnotation> gts{gt("g0", 0, 0, 10, 10, "a")};
    std::vector<Detection> dets{det(0, 0, 10, 10, "b")};
    Matching m = match_detections(dets, gts, 0.5);
    EvalReport report = score(m, dets, gts, &index);
    CHECK(report.raw_correct == 0);
    CHECK(report.variant_correct == 0); // confusables are not equivalences
    CHECK(report.confusable_hits == 1);
}

TEST_CASE("score rejects an inconsistent matching") {
    std::vector<CharAnnotation> gts{gt("g0", 0, 0, 10, 10, "a")};
    std::vector<Detection> dets{det(0, 0, 10, 10, "a")};
    Matching m = match_detections(dets, gts, 0.5);
    Matching broken = m;
    broken.pairs.push_back(broken.pairs[0]); // reuse
    CHECK_THROWS_AS(score(broken, dets, gts), InconsistentMatchingError);

    Matching out_of_range = m;
    out_of_range.pairs[0].gt_index = 5;
    CHECK_THROWS_AS(score(out_of_range, dets, gts), InconsistentMatchingError);
}

TEST_CASE("report invariants hold on random instances") {
    Rng rng(99);
    EquivalenceIndex index = compile_equivalence(load_variant_table(
        "variant\ta\tb\nconfusable\tc\td\n"));
    for (int trial = 0; trial < 300; ++trial) {
        RandomInstance inst = random_instance(rng, 6);
        Matching m = match_detections(inst.dets, inst.gts, 0.5);
        EvalReport report = score(m, inst.dets, inst.gts, &index);

        CHECK(report.raw_accuracy() <= report.variant_accuracy());
        CHECK(report.variant_accuracy() <= 1.0);
        CHECK(report.recall() >= report.variant_accuracy());
        CHECK(report.matched + m.unmatched_ground_truth.size() == report.gt_count);

        std::uint64_t support_sum = 0;
        for (const auto& [cls, stats] : report.per_class) {
            support_sum += stats.support;
            CHECK(stats.raw_correct <= stats.variant_correct);
            CHECK(stats.variant_correct <= stats.support);
        }
        CHECK(support_sum == report.gt_count);

        // With no index, variant accuracy equals raw accuracy exactly.
        EvalReport plain = score(m, inst.dets, inst.gts);
        CHECK(plain.variant_accuracy() == plain.raw_accuracy());
        CHECK(plain.raw_correct == report.raw_correct);
    }
}

TEST_CASE("merged reports equal whole-corpus scoring") {
    Rng rng(7);
    RandomInstance a = random_instance(rng, 6);
    RandomInstance b = random_instance(rng, 6);
    EvalReport ra = score(match_detections(a.dets, a.gts, 0.5), a.dets, a.gts);
    EvalReport rb = score(match_detections(b.dets, b.gts, 0.5), b.dets, b.gts);
    EvalReport merged = ra;
    merged += rb;
    CHECK(merged.gt_count == ra.gt_count + rb.gt_count);
    CHECK(merged.raw_correct == ra.raw_correct + rb.raw_correct);
    std::uint64_t support_sum = 0;
    for (const auto& [cls, stats] : merged.per_class) {
        support_sum += stats.support;
    }
    CHECK(support_sum == merged.gt_count);
}

TEST_CASE("compare_policies: empty index means zero delta") {
    EquivalenceIndex empty;
    std::vector<CharAnnotation> gts{gt("g0", 0, 0, 10, 10, "a"), gt("g1", 20, 0, 10, 10, "b")};
    std::vector<Detection> dets{det(0, 0, 10, 10, "b"), det(20, 0, 10, 10, "b")};
    CorrectionReport report = compare_policies(dets, gts, empty, 0.5);
    CHECK(report.delta() == 0.0);
    CHECK(report.changed.empty());
}

TEST_CASE("compare_policies: one variant mismatch among 10 gts gives delta 0.1") {
    EquivalenceIndex index = compile_equivalence(load_variant_table("variant\ta\tA\n"));
    std::vector<CharAnnotation> gts;
    std::vector<Detection> dets;
    for (int i = 0; i < 10; ++i) {
        gts.push_back(gt("g" + std::to_string(i), 20.0 * i, 0, 10, 10, "a"));
        dets.push_back(det(20.0 * i, 0, 10, 10, i == 0 ? "A" : "a"));
    }
    CorrectionReport report = compare_policies(dets, gts, index, 0.5);
    CHECK(report.delta() == doctest::Approx(0.1));
    REQUIRE(report.changed.size() == 1);
    CHECK(report.changed[0].gt_label == "a");
    CHECK(report.changed[0].det_label == "A");
}

TEST_CASE("compare_policies delta matches an independent rescoring oracle") {
    Rng rng(555);
    std::vector<std::pair<std::string, std::string>> edges{{"a", "b"}, {"b", "c"}};
    EquivalenceIndex index = compile_equivalence(
        load_variant_table("variant\ta\tb\nvariant\tb\tc\n"));

    for (int trial = 0; trial < 200; ++trial) {
        RandomInstance inst = random_instance(rng, 6);
        if (inst.gts.empty()) {
            continue;
        }
        CorrectionReport report = compare_policies(inst.dets, inst.gts, index, 0.5);

        // Oracle: recount equivalent-but-unequal matched pairs by graph
        // reachability over the raw edge list.
        Matching m = match_detections(inst.dets, inst.gts, 0.5);
        std::size_t changed = 0;
        for (const MatchPair& pair : m.pairs) {
            const std::string& dl = inst.dets[pair.det_index].label;
            const std::string& gl = inst.gts[pair.gt_index].label;
            if (dl != gl && oracles::reachable(edges, dl, gl)) {
                ++changed;
            }
        }
        double expected = double(changed) / double(inst.gts.size());
        CHECK(report.delta() == doctest::Approx(expected));
        CHECK(report.changed.size() == changed);
    }
}

TEST_CASE("correction report serializes to CSV with an overall row") {
    EquivalenceIndex index = compile_equivalence(load_variant_table("variant\ta\tb\n"));
    std::vector<CharAnnotation> gts{gt("g0", 0, 0, 10, 10, "a")};
    std::vector<Detection> dets{det(0, 0, 10, 10, "b")};
    CorrectionReport report = compare_policies(dets, gts, index, 0.5);
    std::string csv = report.to_csv();
    CHECK(csv.find("class,support,raw,variant,delta") == 0);
    CHECK(csv.find("__overall__,1,0.000000,1.000000,1.000000") != std::string::npos);
}
