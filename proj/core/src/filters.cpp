#include "mobmap/filters.hpp"

#include <cmath>
#include <cstdint>
#include <unordered_map>

namespace mobmap {

namespace {

struct VoxelKey {
    std::int64_t x, y, z;
    bool operator==(const VoxelKey&) const = default;
};

struct VoxelKeyHash {
    std::size_t operator()(const VoxelKey& k) const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::int64_t v : {k.x, k.y, k.z}) {
            h ^= static_cast<std::uint64_t>(v);
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

inline std::uint8_t to_u8(double v) {
    if (v <= 0.0) return 0;
    if (v >= 255.0) return 255;
    return static_cast<std::uint8_t>(std::floor(v + 0.5));
}

}  // namespace

PointCloud voxel_downsample(const PointCloud& cloud, double voxel_edge) {
    if (!(voxel_edge > 0.0)) throw ParameterError("voxel_downsample: voxel_edge must be > 0");

    struct Acc {
        Vec3 sum;
        double r = 0, g = 0, b = 0;
        std::size_t count = 0;
    };
    std::unordered_map<VoxelKey, std::size_t, VoxelKeyHash> cells;
    cells.reserve(cloud.size());
    std::vector<Acc> accs;  // first-occurrence order keeps the output deterministic
    accs.reserve(cloud.size() / 4 + 1);

    const bool colored = cloud.has_colors();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const Vec3& p = cloud.points[i];
        const VoxelKey key{static_cast<std::int64_t>(std::floor(p.x / voxel_edge)),
                           static_cast<std::int64_t>(std::floor(p.y / voxel_edge)),
                           static_cast<std::int64_t>(std::floor(p.z / voxel_edge))};
        auto [it, inserted] = cells.try_emplace(key, accs.size());
        if (inserted) accs.emplace_back();
        Acc& a = accs[it->second];
        a.sum += p;
        a.count++;
        if (colored) {
            const Rgb8& c = cloud.colors[i];
            a.r += c.r;
            a.g += c.g;
            a.b += c.b;
        }
    }

    PointCloud out;
    out.points.reserve(accs.size());
    if (colored) out.colors.reserve(accs.size());
    for (const Acc& a : accs) {
        const double n = static_cast<double>(a.count);
        out.points.push_back(a.sum / n);
        if (colored) out.colors.push_back({to_u8(a.r / n), to_u8(a.g / n), to_u8(a.b / n)});
    }
    return out;
}

PointCloud range_filter(const PointCloud& cloud, double max_depth) {
    if (!(max_depth > 0.0)) throw ParameterError("range_filter: max_depth must be > 0");
    const double r2 = max_depth * max_depth;
    PointCloud out;
    const bool colored = cloud.has_colors();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (cloud.points[i].squared_norm() <= r2) {
            if (colored) out.push_back(cloud.points[i], cloud.colors[i]);
            else out.push_back(cloud.points[i]);
        }
    }
    return out;
}

std::pair<PointCloud, DenoiseStats> denoise_statistical(const PointCloud& cloud,
                                                        std::size_t k, double alpha) {
    if (cloud.size() < k + 1) {
        throw InsufficientDataError("denoise_statistical: cloud smaller than k+1 points");
    }
    KdTree index(cloud);
    return denoise_statistical(cloud, index, k, alpha);
}

std::pair<PointCloud, DenoiseStats> denoise_statistical(const PointCloud& cloud,
                                                        const KdTree& index,
                                                        std::size_t k, double alpha) {
    if (k < 1) throw ParameterError("denoise_statistical: k must be >= 1");
    if (!(alpha > 0.0)) throw ParameterError("denoise_statistical: alpha must be > 0");
    if (cloud.size() < k + 1) {
        throw InsufficientDataError("denoise_statistical: cloud smaller than k+1 points");
    }

    const std::size_t n = cloud.size();
    DenoiseStats stats;
    stats.mean_dist.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto nb = index.knn(cloud.points[i], k, i);
        double sum = 0.0;
        for (std::size_t j : nb) sum += (cloud.points[j] - cloud.points[i]).norm();
        stats.mean_dist[i] = sum / static_cast<double>(k);
    }

    double mu = 0.0;
    for (double d : stats.mean_dist) mu += d;
    mu /= static_cast<double>(n);
    double var = 0.0;
    for (double d : stats.mean_dist) var += (d - mu) * (d - mu);
    var /= static_cast<double>(n);
    stats.mu = mu;
    stats.sigma = std::sqrt(var);

    const double lo = mu - alpha * stats.sigma;
    const double hi = mu + alpha * stats.sigma;
    PointCloud out;
    const bool colored = cloud.has_colors();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = stats.mean_dist[i];
        if (d >= lo && d <= hi) {
            if (colored) out.push_back(cloud.points[i], cloud.colors[i]);
            else out.push_back(cloud.points[i]);
        }
    }
    return {std::move(out), std::move(stats)};
}

}  // namespace mobmap
