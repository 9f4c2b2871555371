#include "detkit/anchor_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace detkit {

namespace {

constexpr double kSizeLo = 8.0;
constexpr double kSizeHi = 512.0;
constexpr double kRatioOffsetLo = 1e-6;    // log space; super-unit ratios stay > 1
const double kRatioOffsetHi = std::log(4.0);

} // namespace

AnchorVectorCodec::AnchorVectorCodec(AnchorConfig base, RatioMode mode)
    : base_(std::move(base)), mode_(mode) {
    base_.validate();
}

std::size_t AnchorVectorCodec::dimension() const {
    const std::size_t ratio_dims =
        mode_ == RatioMode::kReciprocalPair ? 2 : base_.ratios.size();
    return base_.levels.size() + ratio_dims;
}

std::vector<double> AnchorVectorCodec::encode(const AnchorConfig& cfg) const {
    if (cfg.levels.size() != base_.levels.size()) {
        throw std::invalid_argument("encode: level count differs from base config");
    }
    std::vector<double> v;
    v.reserve(dimension());
    for (const auto& lvl : cfg.levels) v.push_back(std::log(lvl.base_size));

    if (mode_ == RatioMode::kReciprocalPair) {
        if (cfg.ratios.size() != 5) {
            throw std::invalid_argument("encode: reciprocal-pair mode expects 5 ratios");
        }
        auto sorted = cfg.ratios;
        std::sort(sorted.begin(), sorted.end());
        if (!(sorted[3] > 1.0) || !(sorted[4] > sorted[3])) {
            throw std::invalid_argument("encode: expected two distinct ratios above 1");
        }
        v.push_back(std::log(sorted[3]));
        v.push_back(std::log(sorted[4]));
    } else {
        for (double r : cfg.ratios) v.push_back(std::log(r));
    }
    return v;
}

AnchorConfig AnchorVectorCodec::decode(const std::vector<double>& v) const {
    if (v.size() != dimension()) {
        throw std::invalid_argument("decode: vector dimension mismatch");
    }
    AnchorConfig cfg = base_;
    const std::size_t n_levels = base_.levels.size();
    for (std::size_t l = 0; l < n_levels; ++l) {
        cfg.levels[l].base_size = std::exp(v[l]);
    }
    if (mode_ == RatioMode::kReciprocalPair) {
        const double u1 = std::min(v[n_levels], v[n_levels + 1]);
        const double u2 = std::max(v[n_levels], v[n_levels + 1]);
        const double r1 = std::exp(u1);
        const double r2 = std::exp(u2);
        cfg.ratios = {1.0 / r2, 1.0 / r1, 1.0, r1, r2};
    } else {
        for (std::size_t k = 0; k < cfg.ratios.size(); ++k) {
            cfg.ratios[k] = std::exp(v[n_levels + k]);
        }
    }
    return cfg;
}

std::vector<std::pair<double, double>> AnchorVectorCodec::default_bounds() const {
    std::vector<std::pair<double, double>> bounds;
    bounds.reserve(dimension());
    for (const auto& lvl : base_.levels) {
        const double lo = std::max(kSizeLo, lvl.stride / 4.0);
        const double hi = std::min(kSizeHi, lvl.stride * 16.0);
        bounds.emplace_back(std::log(lo), std::log(hi));
    }
    if (mode_ == RatioMode::kReciprocalPair) {
        bounds.emplace_back(kRatioOffsetLo, kRatioOffsetHi);
        bounds.emplace_back(kRatioOffsetLo, kRatioOffsetHi);
    } else {
        for (std::size_t k = 0; k < base_.ratios.size(); ++k) {
            bounds.emplace_back(-kRatioOffsetHi, kRatioOffsetHi); // ratios in [1/4, 4]
        }
    }
    return bounds;
}

AnchorOptimizeResult optimize_anchors(const std::vector<GroundTruth>& gts,
                                      const AnchorConfig& base_cfg,
                                      DEParams params,
                                      const AnchorOptimizeOptions& opts) {
    if (gts.empty()) throw std::invalid_argument("optimize_anchors: ground-truth corpus is empty");

    const AnchorVectorCodec codec(base_cfg, opts.ratio_mode);
    if (params.bounds.empty()) params.bounds = codec.default_bounds();
    if (params.bounds.size() != codec.dimension()) {
        throw std::invalid_argument("optimize_anchors: bounds dimension mismatch");
    }

    CoverageOptions cov = opts.coverage;
    const Objective objective = [&](const std::vector<double>& v) {
        return coverage(codec.decode(v), gts, cov).mean_best_iou;
    };

    AnchorOptimizeResult result;
    result.de = de_optimize(objective, params);
    result.config = codec.decode(result.de.best_vector);
    return result;
}

} // namespace detkit
