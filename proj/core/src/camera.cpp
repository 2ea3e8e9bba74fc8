#include "mobmap/camera.hpp"

#include <cmath>
#include <limits>

namespace mobmap {

PixelProjection project_point(const Vec3& p, const CameraIntrinsics& cam) {
    PixelProjection out;
    if (!(p.z > 0.0)) {
        out.status = ProjectionStatus::behind_camera;
        return out;
    }
    out.depth = p.z;
    out.u = cam.cx + cam.fx * p.x / p.z - cam.ox;
    out.v = cam.cy + cam.fy * p.y / p.z - cam.oy;
    out.x = static_cast<int>(std::lround(out.u));
    out.y = static_cast<int>(std::lround(out.v));
    out.status = (out.x >= 0 && out.x < cam.width && out.y >= 0 && out.y < cam.height)
                     ? ProjectionStatus::visible
                     : ProjectionStatus::out_of_frame;
    return out;
}

Rgb8 mobility_color(double score) {
    const double s = std::clamp(score, 0.0, 1.0);
    const auto r = static_cast<std::uint8_t>(std::floor(255.0 * (1.0 - s) + 0.5));
    const auto g = static_cast<std::uint8_t>(std::floor(255.0 * s + 0.5));
    return {r, g, 0};
}

void splat_points(ImageRgb& image, const PointCloud& cloud, const std::vector<Rgb8>& colors,
                  const CameraIntrinsics& cam) {
    if (image.width != cam.width || image.height != cam.height) {
        throw ParameterError("splat_points: raster dimensions do not match the camera");
    }
    if (colors.size() != cloud.size()) {
        throw ParameterError("splat_points: one color per point required");
    }

    std::vector<double> zbuf(image.pixels.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        const PixelProjection proj = project_point(cloud.points[i], cam);
        if (proj.status != ProjectionStatus::visible) continue;
        for (int dy = -1; dy <= 1; ++dy) {
            for (int dx = -1; dx <= 1; ++dx) {
                const int px = proj.x + dx;
                const int py = proj.y + dy;
                if (!image.contains(px, py)) continue;
                double& z = zbuf[static_cast<std::size_t>(py) * image.width + px];
                if (proj.depth < z) {
                    z = proj.depth;
                    image.at(px, py) = colors[i];
                }
            }
        }
    }
}

ImageRgb render_overlay(const ImageRgb& base, const MobilityMap& map, const PointCloud& cloud,
                        const CameraIntrinsics& cam) {
    if (base.width != cam.width || base.height != cam.height) {
        throw ParameterError("render_overlay: raster dimensions do not match the camera");
    }

    std::vector<bool> painted(cloud.size(), false);
    PointCloud visible;
    std::vector<Rgb8> visible_colors;
    for (const ScoredSegment& seg : map.entries) {
        const Rgb8 color = mobility_color(seg.score);
        for (std::size_t i : seg.indices) {
            if (i >= cloud.size() || painted[i]) continue;
            painted[i] = true;
            visible.push_back(cloud.points[i]);
            visible_colors.push_back(color);
        }
    }

    ImageRgb out = base;
    splat_points(out, visible, visible_colors, cam);
    return out;
}

}  // namespace mobmap
