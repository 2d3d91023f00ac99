// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 hanjakit contributors

#pragma once

#include <algorithm>

namespace hanjakit {

// Axis-aligned rectangle, origin top-left, pixel units.
struct Rect {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;

    double right() const { return x + w; }
    double bottom() const { return y + h; }
    double area() const { return w * h; }
    double center_x() const { return x + w / 2.0; }
    double center_y() const { return y + h / 2.0; }

    bool operator==(const Rect&) const = default;
};

// Integer rectangle on the pixel grid; used for raster crops.
struct PixelRect {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    Rect as_rect() const { return {double(x), double(y), double(w), double(h)}; }

    bool operator==(const PixelRect&) const = default;
};

inline Rect intersect(const Rect& a, const Rect& b) {
    double x0 = std::max(a.x, b.x);
    double y0 = std::max(a.y, b.y);
    double x1 = std::min(a.right(), b.right());
    double y1 = std::min(a.bottom(), b.bottom());
    if (x1 <= x0 || y1 <= y0) {
        return {x0, y0, 0.0, 0.0};
    }
    return {x0, y0, x1 - x0, y1 - y0};
}

inline double intersection_area(const Rect& a, const Rect& b) {
    return intersect(a, b).area();
}

// Intersection over union; 0 when the union is degenerate.
inline double iou(const Rect& a, const Rect& b) {
    double inter = intersection_area(a, b);
    double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) {
        return 0.0;
    }
    return inter / uni;
}

inline bool contains(const Rect& outer, const Rect& inner) {
    return inner.x >= outer.x && inner.y >= outer.y && inner.right() <= outer.right() &&
           inner.bottom() <= outer.bottom();
}

} // namespace hanjakit
