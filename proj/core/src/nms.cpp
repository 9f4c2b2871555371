#include "detkit/nms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace detkit {

namespace {

struct Ranked {
    Detection det;
    std::size_t index; // position in the input, last tie-break key
};

bool ranks_before(const Ranked& a, const Ranked& b) {
    if (a.det.score != b.det.score) return a.det.score > b.det.score;
    if (a.det.box.y1 != b.det.box.y1) return a.det.box.y1 < b.det.box.y1;
    if (a.det.box.x1 != b.det.box.x1) return a.det.box.x1 < b.det.box.x1;
    return a.index < b.index;
}

std::vector<Ranked> ranked(std::vector<Detection> dets) {
    std::vector<Ranked> out;
    out.reserve(dets.size());
    for (std::size_t i = 0; i < dets.size(); ++i) out.push_back({std::move(dets[i]), i});
    return out;
}

std::vector<Detection> strip(std::vector<Ranked> items) {
    std::sort(items.begin(), items.end(), ranks_before);
    std::vector<Detection> out;
    out.reserve(items.size());
    for (auto& r : items) out.push_back(std::move(r.det));
    return out;
}

} // namespace

std::vector<Detection> hard_nms(std::vector<Detection> dets, double iou_threshold) {
    if (iou_threshold < 0.0 || iou_threshold > 1.0) {
        throw std::invalid_argument("hard_nms: iou_threshold must be in [0, 1]");
    }
    auto pool = ranked(std::move(dets));
    std::sort(pool.begin(), pool.end(), ranks_before);

    std::vector<Ranked> kept;
    for (auto& cand : pool) {
        bool suppressed = false;
        for (const auto& k : kept) {
            if (k.det.label != cand.det.label) continue;
            if (iou(k.det.box, cand.det.box) > iou_threshold) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed) kept.push_back(std::move(cand));
    }
    return strip(std::move(kept));
}

std::vector<Detection> soft_nms(std::vector<Detection> dets, const SoftNmsParams& params) {
    if (params.method == SoftNmsMethod::kGaussian && !(params.sigma > 0.0)) {
        throw std::invalid_argument("soft_nms: sigma must be positive");
    }
    if (params.iou_threshold < 0.0 || params.iou_threshold > 1.0) {
        throw std::invalid_argument("soft_nms: iou_threshold must be in [0, 1]");
    }

    auto pool = ranked(std::move(dets));
    std::vector<Ranked> kept;
    kept.reserve(pool.size());

    while (!pool.empty()) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < pool.size(); ++i) {
            if (ranks_before(pool[i], pool[best])) best = i;
        }
        Ranked selected = std::move(pool[best]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));

        for (auto& other : pool) {
            if (other.det.label != selected.det.label) continue;
            const double overlap = iou(selected.det.box, other.det.box);
            if (params.method == SoftNmsMethod::kLinear) {
                if (overlap > params.iou_threshold) other.det.score *= 1.0 - overlap;
            } else {
                if (overlap > 0.0) other.det.score *= std::exp(-(overlap * overlap) / params.sigma);
            }
        }
        pool.erase(std::remove_if(pool.begin(), pool.end(),
                                  [&](const Ranked& r) { return r.det.score < params.score_floor; }),
                   pool.end());

        kept.push_back(std::move(selected));
    }
    return strip(std::move(kept));
}

} // namespace detkit
