// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#include "hanjakit/reading_order.hpp"

#include <algorithm>
#include <cmath>

#include "hanjakit/errors.hpp"

namespace hanjakit {

namespace {

double median_width(const std::vector<OrderedBox>& boxes) {
    std::vector<double> widths;
    widths.reserve(boxes.size());
    for (const OrderedBox& b : boxes) {
        widths.push_back(b.box.w);
    }
    std::sort(widths.begin(), widths.end());
    std::size_t mid = widths.size() / 2;
    if (widths.size() % 2 == 1) {
        return widths[mid];
    }
    return (widths[mid - 1] + widths[mid]) / 2.0;
}

// Total order on boxes so that clustering is independent of input order.
// Identical (box, label) pairs are interchangeable, so no further tie-break
// is needed for a stable output sequence.
bool before(const OrderedBox& a, const OrderedBox& b) {
    if (a.box.center_x() != b.box.center_x()) {
        return a.box.center_x() > b.box.center_x();
    }
    if (a.box.y != b.box.y) {
        return a.box.y < b.box.y;
    }
    if (a.box.x != b.box.x) {
        return a.box.x < b.box.x;
    }
    if (a.box.w != b.box.w) {
        return a.box.w < b.box.w;
    }
    if (a.box.h != b.box.h) {
        return a.box.h < b.box.h;
    }
    return a.label < b.label;
}

bool top_edge_before(const OrderedBox& a, const OrderedBox& b) {
    if (a.box.y != b.box.y) {
        return a.box.y < b.box.y;
    }
    if (a.box.x != b.box.x) {
        return a.box.x < b.box.x;
    }
    if (a.box.w != b.box.w) {
        return a.box.w < b.box.w;
    }
    if (a.box.h != b.box.h) {
        return a.box.h < b.box.h;
    }
    return a.label < b.label;
}

} // namespace

std::size_t ColumnLayout::box_count() const {
    std::size_t n = 0;
    for (const auto& col : columns) {
        n += col.size();
    }
    return n;
}

ColumnLayout cluster_columns(std::vector<OrderedBox> boxes, double gap_factor,
                             bool right_to_left) {
    if (boxes.empty()) {
        throw Error("cluster_columns requires at least one box", "bad_argument");
    }
    for (const OrderedBox& b : boxes) {
        if (b.box.w <= 0.0 || b.box.h <= 0.0) {
            throw Error("cluster_columns requires positive box extents", "bad_argument");
        }
    }

    const double threshold = gap_factor * median_width(boxes);
    std::sort(boxes.begin(), boxes.end(), before);

    ColumnLayout layout;
    double center_sum = 0.0;
    std::size_t center_count = 0;
    for (OrderedBox& b : boxes) {
        double cx = b.box.center_x();
        if (layout.columns.empty() || (center_sum / double(center_count)) - cx > threshold) {
            layout.columns.emplace_back();
            center_sum = 0.0;
            center_count = 0;
        }
        center_sum += cx;
        ++center_count;
        layout.columns.back().push_back(std::move(b));
    }

    for (auto& col : layout.columns) {
        std::sort(col.begin(), col.end(), top_edge_before);
    }
    if (!right_to_left) {
        std::reverse(layout.columns.begin(), layout.columns.end());
    }
    return layout;
}

std::string sequence_text(const ColumnLayout& layout) {
    std::string out;
    for (std::size_t c = 0; c < layout.columns.size(); ++c) {
        if (c > 0) {
            out.push_back('\n');
        }
        for (const OrderedBox& b : layout.columns[c]) {
            out += b.label;
        }
    }
    return out;
}

} // namespace hanjakit
