#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace detkit {

/// Dense 2-D scalar field, row-major.
struct Grid2D {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    Grid2D() = default;
    Grid2D(int w, int h, double fill = 0.0)
        : width(w), height(h),
          values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {
        if (w <= 0 || h <= 0) throw std::invalid_argument("Grid2D: dimensions must be positive");
    }

    double& at(int x, int y) {
        return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(x)];
    }
    double at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                      static_cast<std::size_t>(x)];
    }
    std::size_t size() const { return values.size(); }
};

enum class Padding { kValid, kSame };

/// Convolution with kernel taps spaced `rate` cells apart:
/// out(p) = sum_t F(p - rate*t) k(t), kernel coordinates centered at 0.
/// Kernel sides must be odd. Same padding zero-extends the input and keeps
/// its size; valid padding shrinks by the effective kernel extent
/// (side-1)*rate and requires the extent to fit inside the input.
/// rate = 1 is standard convolution.
Grid2D dilated_conv2d(const Grid2D& input, const Grid2D& kernel, int rate, Padding padding);

/// Receptive field of an odd kernel side at the given dilation rate:
/// (kernel_side - 1) * rate + 1.
int receptive_field(int kernel_side, int rate);

/// Checkerboard-artifact score of a grid for a dilation rate: cells split
/// into rate^2 residue classes by (x mod rate, y mod rate); the index is the
/// between-class share of the total variance, in [0, 1]. Constant grids
/// score 0, a perfect period-`rate` checkerboard scores 1. The grid must be
/// larger than the rate in both dimensions.
double gridding_index(const Grid2D& grid, int rate);

} // namespace detkit
