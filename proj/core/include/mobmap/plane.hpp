#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mobmap/normals.hpp"
#include "mobmap/types.hpp"

namespace mobmap {

/// Plane ax + by + cz + d = 0 with unit (a,b,c), plus the indices of the
/// points within the fitting distance threshold.
struct PlaneModel {
    double a = 0, b = 0, c = 1, d = 0;
    std::vector<std::size_t> inliers;

    Vec3 normal() const { return {a, b, c}; }
    double signed_distance(const Vec3& p) const { return a * p.x + b * p.y + c * p.z + d; }
    double distance(const Vec3& p) const { return std::abs(signed_distance(p)); }
};

struct RansacConfig {
    double success_prob = 0.99;     // p
    double outlier_ratio = 0.5;     // epsilon
    int sample_size = 3;            // gamma, 3 for planes
    double distance_threshold = 0.01;  // d_t, meters
    std::uint64_t max_iterations = 10000;
};

/// Closed-form RANSAC iteration count:
/// k = ceil(log(1-p) / log(1 - (1-epsilon)^gamma)), and 1 when every sample
/// is guaranteed inlying (epsilon = 0).
std::uint64_t ransac_iterations(double p, double epsilon, int gamma);

/// Least-squares plane through the selected points (covariance eigenvector of
/// the smallest eigenvalue), oriented toward `viewpoint`. Inliers are left
/// empty. Throws on degenerate input (collinear / identical points).
PlaneModel least_squares_plane(const PointCloud& cloud, std::span<const std::size_t> indices,
                               const Vec3& viewpoint);

/// RANSAC plane search: the model with the most inliers over the derived
/// iteration count wins (ties by lower summed inlier distance), then gets a
/// least-squares refinement over its inliers. Deterministic under `seed`.
/// Throws NoPlaneFoundError if no model reaches 3 inliers.
PlaneModel ransac_plane(const PointCloud& cloud, const RansacConfig& cfg, std::uint64_t seed,
                        const Vec3& viewpoint = {0, 0, 0});

/// Ground extraction result: the fitted plane with its inlier set, and the
/// remaining cloud with normals and a mapping back to the input indices.
struct GroundRemoval {
    PlaneModel plane;                       // ground, normal toward viewpoint
    std::vector<std::size_t> ground;        // = plane.inliers
    PointCloud rest;
    OrientedNormalField rest_normals;
    std::vector<std::size_t> rest_to_original;
};

/// Remove the largest plane (assumed to be the ground) from the cloud.
GroundRemoval remove_ground(const PointCloud& cloud, const OrientedNormalField& field,
                            const RansacConfig& cfg, std::uint64_t seed);

}  // namespace mobmap
