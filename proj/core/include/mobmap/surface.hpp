#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mobmap/delaunay.hpp"
#include "mobmap/plane.hpp"
#include "mobmap/types.hpp"

namespace mobmap {

/// Triangle soup with explicit vertices; the area routines assume every
/// triangle references 3 distinct valid vertices.
struct TriMesh {
    std::vector<Vec3> vertices;
    std::vector<Triangle> triangles;
};

/// Half the magnitude of the cross product of two adjacent side vectors.
double triangle_area(const Vec3& v1, const Vec3& v2, const Vec3& v3);

/// Sum of triangle areas.
double mesh_area(const TriMesh& mesh);

/// Angle in degrees between two plane normals, folded to [0,90] so that
/// steepness does not depend on normal orientation.
double slope_degrees(const Vec3& n_i, const Vec3& n_f);

/// RANSAC + least-squares plane over one segment's points.
PlaneModel segment_plane(const PointCloud& cloud, std::span<const std::size_t> segment,
                         const RansacConfig& cfg, std::uint64_t seed, const Vec3& viewpoint);

/// Roughness r = A / A': triangulate the segment in the fitted plane's 2D
/// coordinates, then compare the 3D surface area against the in-plane area
/// of the same triangle set. Always >= 1 up to rounding.
/// Throws TriangulationError when the projected points cannot be triangulated.
double roughness(const PointCloud& cloud, std::span<const std::size_t> segment,
                 const PlaneModel& plane);

/// Slope + roughness + fitted plane of one segment. `defined` is false when
/// the segment is degenerate (collinear, too small, untriangulable); such
/// segments are scored 0 downstream.
struct SurfaceProperties {
    bool defined = false;
    double slope_deg = 0.0;
    double rough = 1.0;
    PlaneModel plane;
};

SurfaceProperties estimate_surface(const PointCloud& cloud, std::span<const std::size_t> segment,
                                   const Vec3& ground_normal, const RansacConfig& cfg,
                                   std::uint64_t seed, const Vec3& viewpoint);

}  // namespace mobmap
