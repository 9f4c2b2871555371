#pragma once

#include <vector>

#include "detkit/types.hpp"

namespace detkit {

enum class SoftNmsMethod { kLinear, kGaussian };

/// Canonical Soft-NMS settings: linear decay triggers above iou_threshold,
/// gaussian decays every positive overlap by exp(-iou^2/sigma), and scores
/// that fall below score_floor drop the detection.
struct SoftNmsParams {
    SoftNmsMethod method = SoftNmsMethod::kGaussian;
    double iou_threshold = 0.3; // Nt
    double sigma = 0.5;
    double score_floor = 0.001;
};

/// Greedy hard suppression: walk detections by descending score and drop any
/// with IoU strictly above the threshold against an already kept detection
/// of the same label. Suppression never crosses labels. Ties in score break
/// by (y1, x1, input index) so the output order is total.
std::vector<Detection> hard_nms(std::vector<Detection> dets, double iou_threshold);

/// Score-decay suppression. Each round selects the highest-scoring
/// unprocessed detection, freezes its score, and decays every remaining
/// same-label detection by its overlap against the selection. Final output
/// is sorted by decayed score descending with the same tie-break as
/// hard_nms.
std::vector<Detection> soft_nms(std::vector<Detection> dets, const SoftNmsParams& params = {});

} // namespace detkit
