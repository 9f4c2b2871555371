#pragma once

#include <cstddef>
#include <vector>

#include "detkit/types.hpp"

namespace detkit {

/// Outcome of greedy detection-to-ground-truth matching.
/// tp_flags is parallel to the input detections. fn counts unmatched GT
/// boxes; frames_missed is the frame-level reading of a miss (images with
/// at least one GT box and no detection at all), reported separately so
/// both conventions are available.
struct MatchResult {
    std::vector<std::uint8_t> tp_flags;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t frames_missed = 0;
};

/// Greedy matching in descending score order (ties break on y1, x1, input
/// index). A detection is a true positive iff its best-IoU unmatched
/// ground truth with the same image and label overlaps strictly above
/// iou_threshold; the match consumes that ground truth. IoU exactly at the
/// threshold is a false positive.
MatchResult match(const std::vector<Detection>& dets,
                  const std::vector<GroundTruth>& gts,
                  double iou_threshold = 0.5);

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Precision = TP/(TP+FP), Recall = TP/(TP+FN), F1 = harmonic mean; each
/// term is 0 whenever its denominator is 0.
Metrics precision_recall_f1(std::size_t tp, std::size_t fp, std::size_t fn);
Metrics precision_recall_f1(const MatchResult& m);

struct PRPoint {
    double threshold = 0.0; // score of the detection entering at this point
    double recall = 0.0;
    double precision = 0.0;
};

/// Precision-recall sweep over descending score with the all-points
/// interpolated area underneath. Recall is non-decreasing along points.
struct PRCurve {
    std::vector<PRPoint> points;
    double ap = 0.0;
};

/// Sweep detections by descending score, accumulate TP/FP, and integrate the
/// precision envelope (max precision at any recall >= r) over achieved
/// recall. Detections may arrive in any order. Throws when gts is empty.
PRCurve average_precision(const std::vector<Detection>& dets,
                          const std::vector<GroundTruth>& gts,
                          double iou_threshold = 0.5);

/// Mean AP over the labels present in the ground truth.
double mean_average_precision(const std::vector<Detection>& dets,
                              const std::vector<GroundTruth>& gts,
                              double iou_threshold = 0.5);

} // namespace detkit
