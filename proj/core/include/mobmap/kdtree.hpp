#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "mobmap/types.hpp"

namespace mobmap {

/// Immutable 3D index over a point cloud for k-nearest-neighbour and
/// fixed-radius queries. Results match a brute-force distance scan exactly:
/// knn orders by (distance, index) ascending, so distance ties resolve to
/// the lower point index; radius results come back sorted by index.
///
/// Safe to share across threads once built.
class KdTree {
public:
    static constexpr std::size_t kNoExclude = std::numeric_limits<std::size_t>::max();

    explicit KdTree(const PointCloud& cloud);

    std::size_t size() const { return pts_.size(); }

    /// Indices of the k nearest points to `query`. Throws ParameterError if
    /// k exceeds the number of searchable points. `exclude` skips one indexed
    /// point; pass the query's own index when it acts as its own
    /// neighbourhood seed (denoising, normal estimation).
    std::vector<std::size_t> knn(const Vec3& query, std::size_t k,
                                 std::size_t exclude = kNoExclude) const;

    /// All indices within Euclidean distance <= r of `query`, sorted ascending.
    std::vector<std::size_t> radius(const Vec3& query, double r) const;

private:
    struct Node {
        double split = 0.0;
        std::int32_t axis = -1;  // -1 marks a leaf
        std::uint32_t left = 0;
        std::uint32_t right = 0;
        std::uint32_t begin = 0;
        std::uint32_t end = 0;
    };

    std::uint32_t build(std::uint32_t begin, std::uint32_t end);

    std::vector<Vec3> pts_;           // reordered for locality
    std::vector<std::uint32_t> idx_;  // tree order -> original index
    std::vector<Node> nodes_;
    std::uint32_t root_ = 0;
};

}  // namespace mobmap
