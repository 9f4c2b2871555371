#pragma once

#include <cstdint>
#include <string>

#include "detkit/geometry.hpp"

namespace detkit {

/// Image record: identifier plus pixel dimensions.
struct ImageInfo {
    std::int64_t id = 0;
    double width = 0.0;
    double height = 0.0;

    bool operator==(const ImageInfo&) const = default;
};

/// Annotated object box.
struct GroundTruth {
    Box box;
    int label = 0;
    std::int64_t image_id = 0;

    bool operator==(const GroundTruth&) const = default;
};

/// Scored predicted box.
struct Detection {
    Box box;
    double score = 0.0; // in [0,1]
    int label = 0;
    std::int64_t image_id = 0;

    bool operator==(const Detection&) const = default;
};

} // namespace detkit
