#include "mobmap/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mobmap {

Ycrcb rgb_to_ycrcb(const Rgb8& rgb) {
    const double r = rgb.r, g = rgb.g, b = rgb.b;
    const double y = 0.299 * r + 0.587 * g + 0.114 * b;
    const double cr = (r - y) * 0.713 + 128.0;
    const double cb = (b - y) * 0.564 + 128.0;
    auto clamp = [](double v) { return std::clamp(v, 0.0, 255.0); };
    return {clamp(y), clamp(cr), clamp(cb)};
}

double color_distance(const Ycrcb& a, const Ycrcb& b) {
    const double dy = a.y - b.y;
    const double dcr = a.cr - b.cr;
    const double dcb = a.cb - b.cb;
    return std::sqrt(dy * dy + dcr * dcr + dcb * dcb);
}

std::vector<Segment> region_grow(const PointCloud& cloud, const KdTree& index,
                                 const GrowConfig& cfg, std::uint64_t seed,
                                 const std::vector<bool>* admissible) {
    if (!(cfg.color_threshold > 0.0)) throw ParameterError("region_grow: c_th must be > 0");
    if (!cloud.empty() && !cloud.has_colors()) {
        throw ParameterError("region_grow: cloud has no colors");
    }

    const std::size_t n = cloud.size();
    std::vector<Ycrcb> ycc(n);
    for (std::size_t i = 0; i < n; ++i) ycc[i] = rgb_to_ycrcb(cloud.colors[i]);

    // Available list A with O(1) removal; pos[i] < 0 once a point is taken.
    std::vector<std::size_t> avail;
    avail.reserve(n);
    std::vector<std::ptrdiff_t> pos(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (admissible && !(*admissible)[i]) continue;
        pos[i] = static_cast<std::ptrdiff_t>(avail.size());
        avail.push_back(i);
    }
    auto take = [&](std::size_t point) {
        const std::size_t at = static_cast<std::size_t>(pos[point]);
        const std::size_t last = avail.back();
        avail[at] = last;
        pos[last] = static_cast<std::ptrdiff_t>(at);
        avail.pop_back();
        pos[point] = -1;
    };

    std::mt19937_64 rng(seed);
    std::vector<Segment> segments;

    while (!avail.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, avail.size() - 1);
        const std::size_t seed_point = avail[pick(rng)];

        Segment seg;
        seg.id = static_cast<int>(segments.size());
        seg.seed = seed_point;
        seg.indices.push_back(seed_point);
        take(seed_point);

        // Breadth-wise growth: indices acts as the current-seeds list S_c.
        for (std::size_t cursor = 0; cursor < seg.indices.size(); ++cursor) {
            const std::size_t current = seg.indices[cursor];
            const auto neighbors = index.radius(cloud.points[current], cfg.radius);
            for (std::size_t pj : neighbors) {
                if (pos[pj] < 0) continue;  // not in A
                if (color_distance(ycc[current], ycc[pj]) < cfg.color_threshold) {
                    seg.indices.push_back(pj);
                    take(pj);
                }
            }
        }

        seg.undersized = seg.indices.size() < cfg.min_segment_size;
        segments.push_back(std::move(seg));
    }
    return segments;
}

}  // namespace mobmap
