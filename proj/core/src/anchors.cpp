#include "detkit/anchors.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "detkit/parallel.hpp"

namespace detkit {

using json = nlohmann::json;

void AnchorConfig::validate() const {
    if (levels.empty()) throw std::invalid_argument("AnchorConfig: no pyramid levels");
    if (octave_scales.empty()) throw std::invalid_argument("AnchorConfig: no octave scales");
    if (ratios.empty()) throw std::invalid_argument("AnchorConfig: no ratios");
    double prev_stride = 0.0;
    for (const auto& lvl : levels) {
        if (!(lvl.stride > 0.0)) throw std::invalid_argument("AnchorConfig: stride must be positive");
        if (!(lvl.base_size > 0.0)) throw std::invalid_argument("AnchorConfig: base_size must be positive");
        if (!(lvl.stride > prev_stride)) {
            throw std::invalid_argument("AnchorConfig: strides must be strictly increasing");
        }
        prev_stride = lvl.stride;
    }
    for (double s : octave_scales) {
        if (!(s > 0.0)) throw std::invalid_argument("AnchorConfig: octave scales must be positive");
    }
    for (double r : ratios) {
        if (!(r > 0.0)) throw std::invalid_argument("AnchorConfig: ratios must be positive");
    }
}

std::vector<AnchorShape> anchor_shapes(const AnchorConfig& cfg, std::size_t level_index) {
    if (level_index >= cfg.levels.size()) {
        throw std::invalid_argument("anchor_shapes: level_index out of range");
    }
    const double base = cfg.levels[level_index].base_size;
    std::vector<AnchorShape> shapes;
    shapes.reserve(cfg.anchors_per_location());
    for (double octave : cfg.octave_scales) {
        const double side = base * octave;
        for (double ratio : cfg.ratios) {
            const double sq = std::sqrt(ratio);
            shapes.push_back({side * sq, side / sq});
        }
    }
    return shapes;
}

std::vector<Box> anchor_grid(const AnchorConfig& cfg, std::size_t level_index,
                             double image_w, double image_h) {
    if (!(image_w > 0.0) || !(image_h > 0.0)) {
        throw std::invalid_argument("anchor_grid: image dimensions must be positive");
    }
    const auto shapes = anchor_shapes(cfg, level_index);
    const double stride = cfg.levels[level_index].stride;
    const auto cells_x = static_cast<std::size_t>(std::ceil(image_w / stride));
    const auto cells_y = static_cast<std::size_t>(std::ceil(image_h / stride));

    std::vector<Box> boxes;
    boxes.reserve(cells_x * cells_y * shapes.size());
    for (std::size_t j = 0; j < cells_y; ++j) {
        const double cy = (static_cast<double>(j) + 0.5) * stride;
        for (std::size_t i = 0; i < cells_x; ++i) {
            const double cx = (static_cast<double>(i) + 0.5) * stride;
            for (const auto& s : shapes) {
                boxes.push_back(Box::from_center(cx, cy, s.width, s.height));
            }
        }
    }
    return boxes;
}

namespace {

CoverageReport summarize(std::vector<double> best, double good_iou) {
    CoverageReport report;
    double sum = 0.0;
    double min_v = std::numeric_limits<double>::infinity();
    std::size_t covered = 0;
    for (double b : best) {
        sum += b;
        min_v = std::min(min_v, b);
        if (b >= good_iou) ++covered;
    }
    const auto n = static_cast<double>(best.size());
    report.mean_best_iou = sum / n;
    report.min_best_iou = min_v;
    report.frac_covered = static_cast<double>(covered) / n;
    report.best_iou = std::move(best);
    return report;
}

} // namespace

CoverageReport coverage(const AnchorConfig& cfg, const std::vector<GroundTruth>& gts,
                        const CoverageOptions& opts) {
    cfg.validate();
    if (gts.empty()) throw std::invalid_argument("coverage: ground-truth corpus is empty");
    if (opts.mode == CoverageMode::kFullGrid) {
        throw std::invalid_argument("coverage: full-grid mode needs image dimensions, "
                                    "use coverage_full_grid");
    }

    std::vector<std::vector<AnchorShape>> per_level;
    per_level.reserve(cfg.levels.size());
    for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
        per_level.push_back(anchor_shapes(cfg, l));
    }

    std::vector<double> best(gts.size(), 0.0);
    parallel_chunks(gts.size(), opts.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const double w = gts[i].box.width();
            const double h = gts[i].box.height();
            double b = 0.0;
            if (w > 0.0 && h > 0.0) {
                for (const auto& shapes : per_level) {
                    for (const auto& s : shapes) {
                        b = std::max(b, center_aligned_iou(w, h, s.width, s.height));
                    }
                }
            }
            best[i] = b;
        }
    });
    return summarize(std::move(best), opts.good_iou);
}

CoverageReport coverage_full_grid(const AnchorConfig& cfg,
                                  const std::vector<GroundTruth>& gts,
                                  const std::vector<ImageInfo>& images,
                                  const CoverageOptions& opts) {
    cfg.validate();
    if (gts.empty()) throw std::invalid_argument("coverage: ground-truth corpus is empty");

    std::unordered_map<std::int64_t, const ImageInfo*> by_id;
    for (const auto& img : images) by_id[img.id] = &img;

    // Grids are shared between GT boxes of the same image size.
    struct SizeKey {
        double w, h;
        bool operator==(const SizeKey&) const = default;
    };
    struct SizeKeyHash {
        std::size_t operator()(const SizeKey& k) const {
            return std::hash<double>()(k.w) ^ (std::hash<double>()(k.h) << 1);
        }
    };
    std::unordered_map<SizeKey, std::vector<Box>, SizeKeyHash> grids;
    auto grid_for = [&](double w, double h) -> const std::vector<Box>& {
        auto [it, inserted] = grids.try_emplace(SizeKey{w, h});
        if (inserted) {
            for (std::size_t l = 0; l < cfg.levels.size(); ++l) {
                auto level_boxes = anchor_grid(cfg, l, w, h);
                it->second.insert(it->second.end(), level_boxes.begin(), level_boxes.end());
            }
        }
        return it->second;
    };
    for (const auto& gt : gts) {
        auto found = by_id.find(gt.image_id);
        if (found == by_id.end()) {
            throw std::invalid_argument("coverage_full_grid: ground truth references unknown image id "
                                        + std::to_string(gt.image_id));
        }
        grid_for(found->second->width, found->second->height);
    }

    std::vector<double> best(gts.size(), 0.0);
    parallel_chunks(gts.size(), opts.threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const ImageInfo& img = *by_id.at(gts[i].image_id);
            const auto& grid = grids.at(SizeKey{img.width, img.height});
            double b = 0.0;
            for (const auto& anchor : grid) {
                b = std::max(b, iou(gts[i].box, anchor));
            }
            best[i] = b;
        }
    });
    return summarize(std::move(best), opts.good_iou);
}

std::string anchor_config_to_json(const AnchorConfig& cfg) {
    json j;
    j["levels"] = json::array();
    for (const auto& lvl : cfg.levels) {
        j["levels"].push_back({{"name", lvl.name},
                               {"stride", lvl.stride},
                               {"base_size", lvl.base_size}});
    }
    j["octave_scales"] = cfg.octave_scales;
    j["ratios"] = cfg.ratios;
    return j.dump(2) + "\n";
}

AnchorConfig anchor_config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("anchor config: invalid JSON: ") + e.what());
    }
    AnchorConfig cfg;
    try {
        for (const auto& lvl : j.at("levels")) {
            cfg.levels.push_back({lvl.at("name").get<std::string>(),
                                  lvl.at("stride").get<double>(),
                                  lvl.at("base_size").get<double>()});
        }
        cfg.octave_scales = j.at("octave_scales").get<std::vector<double>>();
        cfg.ratios = j.at("ratios").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("anchor config: bad schema: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

AnchorConfig load_anchor_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open anchor config: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return anchor_config_from_json(buf.str());
}

void save_anchor_config(const AnchorConfig& cfg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write anchor config: " + path);
    out << anchor_config_to_json(cfg);
}

AnchorConfig retinanet_default_config() {
    AnchorConfig cfg;
    cfg.levels = {{"P3", 8.0, 32.0},
                  {"P4", 16.0, 64.0},
                  {"P5", 32.0, 128.0},
                  {"P6", 64.0, 256.0},
                  {"P7", 128.0, 512.0}};
    cfg.octave_scales = {1.0, std::pow(2.0, 1.0 / 3.0), std::pow(2.0, 2.0 / 3.0)};
    cfg.ratios = {0.5, 1.0, 2.0};
    return cfg;
}

AnchorConfig paper_optimized_config() {
    AnchorConfig cfg;
    cfg.levels = {{"P3", 8.0, 16.0},
                  {"P4", 16.0, 32.0},
                  {"P5", 32.0, 64.0},
                  {"P6", 64.0, 64.0},
                  {"P7", 128.0, 64.0}};
    cfg.octave_scales = {1.0, std::pow(2.0, 1.0 / 3.0), std::pow(2.0, 2.0 / 3.0)};
    cfg.ratios = {0.481, 0.741, 1.0, 1.349, 2.078};
    return cfg;
}

AnchorConfig resolve_anchor_config(const std::string& name_or_path) {
    if (name_or_path == "retinanet-default") return retinanet_default_config();
    if (name_or_path == "paper-optimized") return paper_optimized_config();
    return load_anchor_config(name_or_path);
}

} // namespace detkit
