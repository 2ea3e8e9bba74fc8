#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mobmap/eig3.hpp"
#include "mobmap/kdtree.hpp"
#include "mobmap/types.hpp"

namespace mobmap {

/// Least-squares plane of a neighbourhood: centroid, covariance and its
/// eigen-decomposition. The plane normal is the eigenvector of the smallest
/// eigenvalue. `degenerate` marks rank-deficient neighbourhoods (collinear
/// points) whose normal direction is not unique.
struct LocalPlaneFit {
    Vec3 centroid;
    Mat3 covariance;
    std::array<double, 3> eigenvalues{};  // ascending
    Vec3 normal;                          // eigenvector of eigenvalues[0]
    bool degenerate = false;
};

enum class NormalStatus : std::uint8_t {
    ok = 0,
    degenerate = 1,  // rank-deficient neighbourhood
    ambiguous = 2,   // normal exactly perpendicular to the viewing ray
};

/// Per-point unit normals oriented toward a viewpoint, parallel to a cloud.
struct OrientedNormalField {
    std::vector<Vec3> normals;
    std::vector<NormalStatus> status;
    Vec3 viewpoint;

    std::size_t size() const { return normals.size(); }
    bool valid(std::size_t i) const { return status[i] == NormalStatus::ok; }
};

/// Centroid + covariance (1/k normalization) of the selected points and the
/// eigen-decomposition of the covariance.
/// Throws InsufficientDataError for fewer than 3 points and
/// DegenerateNeighborhoodError when all points coincide.
LocalPlaneFit local_plane_fit(const PointCloud& cloud, std::span<const std::size_t> neighbors);

struct OrientResult {
    Vec3 normal;
    bool ambiguous = false;
};

/// Flip `fit_normal` if needed so that normal . (viewpoint - point) > 0.
/// A dot product of exactly zero is reported ambiguous and left unflipped.
OrientResult orient_normal(const Vec3& fit_normal, const Vec3& point, const Vec3& viewpoint);

/// Estimate one oriented normal per point from its k-nearest neighbourhood
/// (self excluded). Degenerate or ambiguous points are flagged and expected
/// to be skipped downstream.
OrientedNormalField estimate_normals(const PointCloud& cloud, const KdTree& index,
                                     std::size_t k, const Vec3& viewpoint);

/// Color-code normals: each component is mapped linearly onto [0,255] using
/// the field-wide min/max of that component over valid normals, rounded
/// half-up. A component with zero range maps to 0; invalid points get (0,0,0).
/// Throws InsufficientDataError when no normal is valid.
std::vector<Rgb8> rgbn_encode(const OrientedNormalField& field);

}  // namespace mobmap
