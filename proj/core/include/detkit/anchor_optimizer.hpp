#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "detkit/anchors.hpp"
#include "detkit/differential_evolution.hpp"
#include "detkit/types.hpp"

namespace detkit {

enum class RatioMode {
    kReciprocalPair, // 2 parameters decode to 5 ratios {1/r2, 1/r1, 1, r1, r2}
    kFree,           // every ratio of the base config is a free parameter
};

/// Maps between anchor configurations and flat DE parameter vectors.
/// Layout: one log base size per level, then the ratio parameters
/// (two logs of the super-unit ratios in reciprocal-pair mode, otherwise
/// one log ratio per base-config ratio). Octave scales, level names and
/// strides stay fixed at the base configuration.
class AnchorVectorCodec {
public:
    explicit AnchorVectorCodec(AnchorConfig base, RatioMode mode = RatioMode::kReciprocalPair);

    std::size_t dimension() const;
    RatioMode mode() const { return mode_; }
    const AnchorConfig& base() const { return base_; }

    /// In reciprocal-pair mode the config must carry exactly five ratios of
    /// the symmetric form; the two above 1 define the parameters.
    std::vector<double> encode(const AnchorConfig& cfg) const;

    /// Always yields a valid config: the two ratio offsets are sorted, so
    /// any in-bounds vector decodes.
    AnchorConfig decode(const std::vector<double>& v) const;

    /// Search box: per level [max(8, stride/4), min(512, 16*stride)] in log
    /// space, ratio offsets in log space up to log 4. Size bounds scale with
    /// the level stride so coarse levels cannot collapse onto tiny anchors.
    std::vector<std::pair<double, double>> default_bounds() const;

private:
    AnchorConfig base_;
    RatioMode mode_;
};

struct AnchorOptimizeOptions {
    RatioMode ratio_mode = RatioMode::kReciprocalPair;
    CoverageOptions coverage; // objective scorer settings
};

struct AnchorOptimizeResult {
    AnchorConfig config;
    DEResult de;
};

/// Differential-evolution search for the anchor configuration maximizing
/// mean best coverage IoU over the corpus. params.bounds may be empty (the
/// codec default box is used) and population_size 0 picks 10x dimension.
AnchorOptimizeResult optimize_anchors(const std::vector<GroundTruth>& gts,
                                      const AnchorConfig& base_cfg,
                                      DEParams params,
                                      const AnchorOptimizeOptions& opts = {});

} // namespace detkit
