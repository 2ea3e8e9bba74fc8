#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mobmap/kdtree.hpp"
#include "mobmap/types.hpp"

namespace mobmap {

/// Per-point mean neighbour distances plus the cloud-wide statistics that
/// drive statistical outlier removal.
struct DenoiseStats {
    std::vector<double> mean_dist;  // d-bar per input point, meters
    double mu = 0.0;                // mean of mean_dist
    double sigma = 0.0;             // population standard deviation of mean_dist
};

/// Replace all points sharing an axis-aligned voxel cell by their centroid.
/// Cells are anchored at the world origin (floor(coord/edge)); colors, when
/// present, are averaged per cell. Output cells appear in order of first
/// occurrence in the input.
PointCloud voxel_downsample(const PointCloud& cloud, double voxel_edge);

/// Keep exactly the points with Euclidean distance from the origin
/// <= max_depth, preserving order.
PointCloud range_filter(const PointCloud& cloud, double max_depth);

/// Statistical outlier removal: for each point compute the mean distance
/// d-bar to its k nearest neighbours (self excluded), then keep points with
/// mu - alpha*sigma <= d-bar <= mu + alpha*sigma.
std::pair<PointCloud, DenoiseStats> denoise_statistical(const PointCloud& cloud,
                                                        std::size_t k, double alpha);

/// Same, reusing an index already built over `cloud`.
std::pair<PointCloud, DenoiseStats> denoise_statistical(const PointCloud& cloud,
                                                        const KdTree& index,
                                                        std::size_t k, double alpha);

}  // namespace mobmap
