#pragma once

#include <algorithm>
#include <stdexcept>

namespace detkit {

/// Axis-aligned box with continuous pixel coordinates.
/// (x1,y1) is the top-left corner, (x2,y2) the bottom-right corner;
/// area is width*height with no +1 term, so zero-area boxes are legal.
struct Box {
    double x1 = 0.0;
    double y1 = 0.0;
    double x2 = 0.0;
    double y2 = 0.0;

    Box() = default;
    Box(double x1_, double y1_, double x2_, double y2_)
        : x1(x1_), y1(y1_), x2(x2_), y2(y2_) {
        if (!(x1 <= x2) || !(y1 <= y2)) {
            throw std::invalid_argument("Box: requires x1 <= x2 and y1 <= y2");
        }
    }

    double width() const { return x2 - x1; }
    double height() const { return y2 - y1; }
    double area() const { return width() * height(); }
    double center_x() const { return 0.5 * (x1 + x2); }
    double center_y() const { return 0.5 * (y1 + y2); }

    static Box from_center(double cx, double cy, double w, double h) {
        return Box(cx - 0.5 * w, cy - 0.5 * h, cx + 0.5 * w, cy + 0.5 * h);
    }

    Box translated(double dx, double dy) const {
        return Box(x1 + dx, y1 + dy, x2 + dx, y2 + dy);
    }

    bool operator==(const Box&) const = default;
};

inline double area(const Box& b) { return b.area(); }

inline double intersection_area(const Box& a, const Box& b) {
    const double w = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
    const double h = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
    if (w <= 0.0 || h <= 0.0) return 0.0;
    return w * h;
}

/// Intersection over union. Total on valid boxes: two degenerate
/// (zero-area) boxes give 0 rather than an error.
inline double iou(const Box& a, const Box& b) {
    const double inter = intersection_area(a, b);
    const double uni = a.area() + b.area() - inter;
    return uni > 0.0 ? inter / uni : 0.0;
}

/// IoU of two rectangles of the given shapes placed with coincident centers.
/// This is the overlap measure used for anchor-shape coverage scoring.
inline double center_aligned_iou(double w_a, double h_a, double w_b, double h_b) {
    if (!(w_a > 0.0) || !(h_a > 0.0) || !(w_b > 0.0) || !(h_b > 0.0)) {
        throw std::invalid_argument("center_aligned_iou: dimensions must be positive");
    }
    const double inter = std::min(w_a, w_b) * std::min(h_a, h_b);
    const double uni = w_a * h_a + w_b * h_b - inter;
    return inter / uni;
}

} // namespace detkit
