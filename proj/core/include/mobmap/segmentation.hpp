#pragma once

#include <cstdint>
#include <vector>

#include "mobmap/kdtree.hpp"
#include "mobmap/types.hpp"

namespace mobmap {

struct Ycrcb {
    double y = 0, cr = 0, cb = 0;
};

/// BT.601 full-range RGB -> YCrCb, channels clamped to [0,255].
Ycrcb rgb_to_ycrcb(const Rgb8& rgb);

/// Euclidean distance in YCrCb space.
double color_distance(const Ycrcb& a, const Ycrcb& b);

struct GrowConfig {
    double color_threshold = 6.0;   // c_th
    double radius = 0.025;          // spatial neighbourhood for the grow step
    std::size_t min_segment_size = 30;
};

/// One grown region: indices into the segmented cloud. Segments smaller than
/// the configured minimum are kept but flagged undersized.
struct Segment {
    int id = 0;
    std::vector<std::size_t> indices;
    std::size_t seed = 0;
    bool undersized = false;
};

/// Color-based region growing over a color-coded cloud: seeds are drawn
/// randomly (deterministic under `seed`) from the available list, regions
/// grow breadth-first through radius neighbours whose color distance to the
/// current point stays below the threshold. `admissible`, when given, limits
/// the available list (e.g. to points with valid normals).
///
/// The returned segments partition the available points.
std::vector<Segment> region_grow(const PointCloud& cloud, const KdTree& index,
                                 const GrowConfig& cfg, std::uint64_t seed,
                                 const std::vector<bool>* admissible = nullptr);

}  // namespace mobmap
