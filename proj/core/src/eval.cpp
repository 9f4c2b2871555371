#include "detkit/eval.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace detkit {

namespace {

bool scores_before(const Detection& a, const Detection& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.box.y1 != b.box.y1) return a.box.y1 < b.box.y1;
    return a.box.x1 < b.box.x1;
}

} // namespace

MatchResult match(const std::vector<Detection>& dets,
                  const std::vector<GroundTruth>& gts,
                  double iou_threshold) {
    MatchResult result;
    result.tp_flags.assign(dets.size(), 0);

    // Per (image, label) ground-truth index lists, deterministic order.
    std::map<std::pair<std::int64_t, int>, std::vector<std::size_t>> gt_groups;
    for (std::size_t g = 0; g < gts.size(); ++g) {
        gt_groups[{gts[g].image_id, gts[g].label}].push_back(g);
    }

    std::vector<std::size_t> order(dets.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores_before(dets[a], dets[b])) return true;
        if (scores_before(dets[b], dets[a])) return false;
        return a < b;
    });

    std::vector<std::uint8_t> gt_matched(gts.size(), 0);
    for (std::size_t idx : order) {
        const Detection& det = dets[idx];
        auto group = gt_groups.find({det.image_id, det.label});
        if (group == gt_groups.end()) continue;

        double best_iou = 0.0;
        std::size_t best_g = gts.size();
        for (std::size_t g : group->second) {
            if (gt_matched[g]) continue;
            const double v = iou(det.box, gts[g].box);
            if (v > best_iou) { // ties keep the earliest candidate
                best_iou = v;
                best_g = g;
            }
        }
        if (best_g < gts.size() && best_iou > iou_threshold) {
            gt_matched[best_g] = 1;
            result.tp_flags[idx] = 1;
        }
    }

    for (std::uint8_t f : result.tp_flags) {
        if (f) ++result.tp; else ++result.fp;
    }
    for (std::uint8_t m : gt_matched) {
        if (!m) ++result.fn;
    }

    std::set<std::int64_t> images_with_gt;
    for (const auto& gt : gts) images_with_gt.insert(gt.image_id);
    std::set<std::int64_t> images_with_det;
    for (const auto& det : dets) images_with_det.insert(det.image_id);
    for (std::int64_t id : images_with_gt) {
        if (!images_with_det.contains(id)) ++result.frames_missed;
    }
    return result;
}

Metrics precision_recall_f1(std::size_t tp, std::size_t fp, std::size_t fn) {
    Metrics m;
    const auto tp_d = static_cast<double>(tp);
    if (tp + fp > 0) m.precision = tp_d / static_cast<double>(tp + fp);
    if (tp + fn > 0) m.recall = tp_d / static_cast<double>(tp + fn);
    if (m.precision + m.recall > 0.0) {
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    }
    return m;
}

Metrics precision_recall_f1(const MatchResult& m) {
    return precision_recall_f1(m.tp, m.fp, m.fn);
}

PRCurve average_precision(const std::vector<Detection>& dets,
                          const std::vector<GroundTruth>& gts,
                          double iou_threshold) {
    if (gts.empty()) throw std::invalid_argument("average_precision: no ground truth");

    std::vector<Detection> sorted = dets;
    std::stable_sort(sorted.begin(), sorted.end(), scores_before);
    const MatchResult m = match(sorted, gts, iou_threshold);

    PRCurve curve;
    curve.points.reserve(sorted.size());
    const double n_gt = static_cast<double>(gts.size());
    std::size_t cum_tp = 0;
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        cum_tp += m.tp_flags[k];
        curve.points.push_back({sorted[k].score,
                                static_cast<double>(cum_tp) / n_gt,
                                static_cast<double>(cum_tp) / static_cast<double>(k + 1)});
    }

    // Envelope: precision at recall r is the max precision at any recall
    // >= r; integrate over the recall steps.
    double envelope = 0.0;
    double ap = 0.0;
    for (std::size_t k = curve.points.size(); k-- > 0;) {
        envelope = std::max(envelope, curve.points[k].precision);
        const double prev_recall = k == 0 ? 0.0 : curve.points[k - 1].recall;
        if (curve.points[k].recall > prev_recall) {
            ap += (curve.points[k].recall - prev_recall) * envelope;
        }
    }
    curve.ap = ap;
    return curve;
}

double mean_average_precision(const std::vector<Detection>& dets,
                              const std::vector<GroundTruth>& gts,
                              double iou_threshold) {
    if (gts.empty()) throw std::invalid_argument("mean_average_precision: no ground truth");
    std::set<int> labels;
    for (const auto& gt : gts) labels.insert(gt.label);

    double sum = 0.0;
    for (int label : labels) {
        std::vector<Detection> d;
        std::vector<GroundTruth> g;
        for (const auto& det : dets) {
            if (det.label == label) d.push_back(det);
        }
        for (const auto& gt : gts) {
            if (gt.label == label) g.push_back(gt);
        }
        sum += average_precision(d, g, iou_threshold).ap;
    }
    return sum / static_cast<double>(labels.size());
}

} // namespace detkit
