// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <string>
#include <vector>

#include "hanjakit/geometry.hpp"

namespace hanjakit {

// One character box entering reading-order assembly; `source_index` points
// back at the annotation or detection it came from.
struct OrderedBox {
    Rect box;
    std::string label;
    std::size_t source_index = 0;
};

// Columns in reading order (rightmost first for classical vertical text),
// each column top to bottom.
struct ColumnLayout {
    std::vector<std::vector<OrderedBox>> columns;

    std::size_t box_count() const;
};

// Groups boxes into vertical columns by 1-D gap thresholding on horizontal
// centers: walking the centers in reading order, a new column starts when
// the gap to the current column's running mean center exceeds
// gap_factor * median box width. Within a column boxes sort by top edge.
// The output is invariant under permutations of the input.
ColumnLayout cluster_columns(std::vector<OrderedBox> boxes, double gap_factor = 1.5,
                             bool right_to_left = true);

// Concatenates labels column by column, top to bottom, with a newline
// between columns.
std::string sequence_text(const ColumnLayout& layout);

} // namespace hanjakit
