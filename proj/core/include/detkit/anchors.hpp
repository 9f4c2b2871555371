#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "detkit/geometry.hpp"
#include "detkit/types.hpp"

namespace detkit {

/// One feature-pyramid tier. The stride is the number of input pixels per
/// feature cell; base_size is the reference anchor side at octave 1, ratio 1.
struct PyramidLevel {
    std::string name;      // e.g. "P3"
    double stride = 0.0;
    double base_size = 0.0;

    bool operator==(const PyramidLevel&) const = default;
};

/// Anchor layout: ordered pyramid levels plus the octave scales and aspect
/// ratios shared by every level. Anchors per location is
/// |octave_scales| * |ratios|.
struct AnchorConfig {
    std::vector<PyramidLevel> levels;
    std::vector<double> octave_scales;
    std::vector<double> ratios; // width/height

    std::size_t anchors_per_location() const {
        return octave_scales.size() * ratios.size();
    }

    /// Throws std::invalid_argument on any invariant violation:
    /// positive strides/sizes/scales/ratios, strictly increasing strides.
    void validate() const;
};

struct AnchorShape {
    double width = 0.0;
    double height = 0.0;
};

/// Anchor shapes for one level, octave-major then ratio. The ratio split is
/// area preserving: w = s*sqrt(r), h = s/sqrt(r) with s = base_size*octave,
/// so all shapes of one octave share the same area.
std::vector<AnchorShape> anchor_shapes(const AnchorConfig& cfg, std::size_t level_index);

/// Dense anchor grid for one level over an image. Cell centers sit at
/// ((i+0.5)*stride, (j+0.5)*stride) for i in [0, ceil(w/stride)) and j
/// likewise; boxes are emitted row-major with x fastest, shapes innermost.
/// Anchors are not clipped to the image.
std::vector<Box> anchor_grid(const AnchorConfig& cfg, std::size_t level_index,
                             double image_w, double image_h);

enum class CoverageMode {
    kCenterAligned, // best shape IoU with boxes placed on a common center
    kFullGrid,      // best IoU against the actual per-image anchor grid
};

struct CoverageOptions {
    CoverageMode mode = CoverageMode::kCenterAligned;
    double good_iou = 0.5; // threshold for the covered fraction
    int threads = 1;       // 0 = hardware concurrency
};

struct CoverageReport {
    double mean_best_iou = 0.0;
    double min_best_iou = 0.0;
    double frac_covered = 0.0;        // fraction of GT with best >= good_iou
    std::vector<double> best_iou;     // per ground-truth best, input order
};

/// Score a configuration against a ground-truth corpus: per GT box the best
/// center-aligned IoU over every level and anchor shape. Throws on an empty
/// corpus.
CoverageReport coverage(const AnchorConfig& cfg, const std::vector<GroundTruth>& gts,
                        const CoverageOptions& opts = {});

/// Full-grid variant: best plain IoU of each GT box against the complete
/// anchor grid of its image. Needs image dimensions; every gt.image_id must
/// appear in images.
CoverageReport coverage_full_grid(const AnchorConfig& cfg,
                                  const std::vector<GroundTruth>& gts,
                                  const std::vector<ImageInfo>& images,
                                  const CoverageOptions& opts = {});

// JSON (de)serialization. Schema:
//   {"levels":[{"name":..,"stride":..,"base_size":..}],
//    "octave_scales":[..], "ratios":[..]}
std::string anchor_config_to_json(const AnchorConfig& cfg);
AnchorConfig anchor_config_from_json(const std::string& text);
AnchorConfig load_anchor_config(const std::string& path);
void save_anchor_config(const AnchorConfig& cfg, const std::string& path);

/// P3-P7 layout with strides 8/16/32/64/128, sizes 32..512, three octaves
/// (2^0, 2^(1/3), 2^(2/3)) and ratios 1:2, 1:1, 2:1 - nine anchors per cell.
AnchorConfig retinanet_default_config();

/// Published small-lesion tuning of the default layout: per-level sizes
/// 16/32/64/64/64 and five ratios (0.481 0.741 1.0 1.349 2.078), fifteen
/// anchors per cell.
AnchorConfig paper_optimized_config();

/// Resolve a --config argument: preset name ("retinanet-default",
/// "paper-optimized") or a path to a JSON file.
AnchorConfig resolve_anchor_config(const std::string& name_or_path);

} // namespace detkit
