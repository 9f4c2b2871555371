#include "detkit/dilated_conv.hpp"

namespace detkit {

Grid2D dilated_conv2d(const Grid2D& input, const Grid2D& kernel, int rate, Padding padding) {
    if (rate < 1) throw std::invalid_argument("dilated_conv2d: rate must be >= 1");
    if (kernel.width % 2 == 0 || kernel.height % 2 == 0) {
        throw std::invalid_argument("dilated_conv2d: kernel sides must be odd");
    }
    const int half_w = kernel.width / 2;
    const int half_h = kernel.height / 2;
    const int extent_w = (kernel.width - 1) * rate + 1;
    const int extent_h = (kernel.height - 1) * rate + 1;

    int out_w = input.width;
    int out_h = input.height;
    int origin_x = 0; // input position of output cell (0,0)
    int origin_y = 0;
    if (padding == Padding::kValid) {
        if (extent_w > input.width || extent_h > input.height) {
            throw std::invalid_argument("dilated_conv2d: effective kernel extent exceeds input");
        }
        out_w = input.width - extent_w + 1;
        out_h = input.height - extent_h + 1;
        origin_x = half_w * rate;
        origin_y = half_h * rate;
    }

    Grid2D out(out_w, out_h);
    for (int oy = 0; oy < out_h; ++oy) {
        const int py = oy + origin_y;
        for (int ox = 0; ox < out_w; ++ox) {
            const int px = ox + origin_x;
            double acc = 0.0;
            for (int ty = -half_h; ty <= half_h; ++ty) {
                const int sy = py - rate * ty;
                if (sy < 0 || sy >= input.height) continue;
                for (int tx = -half_w; tx <= half_w; ++tx) {
                    const int sx = px - rate * tx;
                    if (sx < 0 || sx >= input.width) continue;
                    acc += input.at(sx, sy) * kernel.at(tx + half_w, ty + half_h);
                }
            }
            out.at(ox, oy) = acc;
        }
    }
    return out;
}

int receptive_field(int kernel_side, int rate) {
    if (kernel_side < 1 || kernel_side % 2 == 0) {
        throw std::invalid_argument("receptive_field: kernel side must be odd and positive");
    }
    if (rate < 1) throw std::invalid_argument("receptive_field: rate must be >= 1");
    return (kernel_side - 1) * rate + 1;
}

double gridding_index(const Grid2D& grid, int rate) {
    if (rate < 1) throw std::invalid_argument("gridding_index: rate must be >= 1");
    if (grid.width <= rate || grid.height <= rate) {
        throw std::invalid_argument("gridding_index: grid must be larger than the rate");
    }
    const auto n = static_cast<double>(grid.size());
    double mean = 0.0;
    for (double v : grid.values) mean += v;
    mean /= n;

    double total_var = 0.0;
    for (double v : grid.values) total_var += (v - mean) * (v - mean);
    total_var /= n;

    // Class means over the (x mod rate, y mod rate) residue lattice;
    // between-class variance is class-size weighted so the variance
    // decomposition is exact.
    const int classes = rate * rate;
    std::vector<double> class_sum(classes, 0.0);
    std::vector<double> class_count(classes, 0.0);
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            const int c = (y % rate) * rate + (x % rate);
            class_sum[c] += grid.at(x, y);
            class_count[c] += 1.0;
        }
    }
    double between_var = 0.0;
    for (int c = 0; c < classes; ++c) {
        if (class_count[c] == 0.0) continue;
        const double class_mean = class_sum[c] / class_count[c];
        between_var += class_count[c] / n * (class_mean - mean) * (class_mean - mean);
    }
    return between_var / (total_var + 1e-12);
}

} // namespace detkit
