#pragma once

#include <cstdint>
#include <vector>

#include "mobmap/image.hpp"
#include "mobmap/mobility.hpp"
#include "mobmap/types.hpp"

namespace mobmap {

/// Pinhole intrinsics with the factory pixel offsets between the depth and
/// RGB frames folded in.
struct CameraIntrinsics {
    double fx = 570.3, fy = 570.3;  // focal lengths, pixels
    double cx = 320.0, cy = 240.0;  // optical center, pixels
    double ox = 0.0, oy = 0.0;      // depth-to-RGB pixel offsets
    int width = 640, height = 480;
};

enum class ProjectionStatus : std::uint8_t { visible, out_of_frame, behind_camera };

struct PixelProjection {
    ProjectionStatus status = ProjectionStatus::behind_camera;
    int x = 0, y = 0;      // rounded pixel, valid when visible
    double u = 0, v = 0;   // unrounded image coordinates, valid when Z > 0
    double depth = 0;
};

/// x = cx + fx*X/Z - ox, y = cy + fy*Y/Z - oy, rounded to the nearest pixel;
/// points behind the camera are rejected, points outside the raster are
/// reported out_of_frame (with the unrounded coordinates still filled in).
PixelProjection project_point(const Vec3& p, const CameraIntrinsics& cam);

/// Linear red-to-green colormap: score 0 -> (255,0,0), 1 -> (0,255,0).
Rgb8 mobility_color(double score);

/// Project points into the raster as 3x3 splats with a per-pixel depth test
/// (smaller Z wins). Points behind the camera or out of frame are skipped.
void splat_points(ImageRgb& image, const PointCloud& cloud, const std::vector<Rgb8>& colors,
                  const CameraIntrinsics& cam);

/// Paint every segment of the map onto a copy of `base` using the mobility
/// colormap. Throws ParameterError when the raster does not match `cam`.
ImageRgb render_overlay(const ImageRgb& base, const MobilityMap& map, const PointCloud& cloud,
                        const CameraIntrinsics& cam);

}  // namespace mobmap
