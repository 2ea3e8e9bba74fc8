#include "mobmap/surface.hpp"

#include <algorithm>
#include <cmath>

namespace mobmap {

double triangle_area(const Vec3& v1, const Vec3& v2, const Vec3& v3) {
    return 0.5 * (v2 - v1).cross(v3 - v2).norm();
}

double mesh_area(const TriMesh& mesh) {
    double area = 0.0;
    for (const Triangle& t : mesh.triangles) {
        area += triangle_area(mesh.vertices[t.v[0]], mesh.vertices[t.v[1]], mesh.vertices[t.v[2]]);
    }
    return area;
}

double slope_degrees(const Vec3& n_i, const Vec3& n_f) {
    double theta = angle_between(n_i, n_f) * 180.0 / M_PI;
    if (theta > 90.0) theta = 180.0 - theta;
    return theta;
}

PlaneModel segment_plane(const PointCloud& cloud, std::span<const std::size_t> segment,
                         const RansacConfig& cfg, std::uint64_t seed, const Vec3& viewpoint) {
    PointCloud view;
    view.points.reserve(segment.size());
    for (std::size_t i : segment) view.points.push_back(cloud.points[i]);

    PlaneModel model = ransac_plane(view, cfg, seed, viewpoint);
    // Inlier indices refer to the segment-local cloud; translate back.
    for (std::size_t& i : model.inliers) i = segment[i];
    return model;
}

double roughness(const PointCloud& cloud, std::span<const std::size_t> segment,
                 const PlaneModel& plane) {
    if (segment.size() < 3) throw TriangulationError("roughness: segment smaller than 3 points");

    // Orthonormal basis (u, v) spanning the fitted plane.
    const Vec3 n = plane.normal();
    Vec3 axis{1, 0, 0};
    if (std::abs(n.y) < std::abs(n.x)) axis = {0, 1, 0};
    if (std::abs(n.z) < std::abs(n.x) && std::abs(n.z) < std::abs(n.y)) axis = {0, 0, 1};
    const Vec3 u = axis.cross(n).normalized();
    const Vec3 v = n.cross(u);

    // Any point on the plane works as the 2D origin.
    const Vec3 origin = n * (-plane.d);

    std::vector<Vec2> projected(segment.size());
    for (std::size_t i = 0; i < segment.size(); ++i) {
        const Vec3 d = cloud.points[segment[i]] - origin;
        projected[i] = {d.dot(u), d.dot(v)};
    }

    // Connectivity comes from the 2D projection and is reused for both areas,
    // so A and A' sum over the same triangle set.
    const std::vector<Triangle> tris = delaunay_2d(projected);

    double area3 = 0.0;
    double area2 = 0.0;
    for (const Triangle& t : tris) {
        area3 += triangle_area(cloud.points[segment[t.v[0]]], cloud.points[segment[t.v[1]]],
                               cloud.points[segment[t.v[2]]]);
        const Vec3 p1{projected[t.v[0]].x, projected[t.v[0]].y, 0.0};
        const Vec3 p2{projected[t.v[1]].x, projected[t.v[1]].y, 0.0};
        const Vec3 p3{projected[t.v[2]].x, projected[t.v[2]].y, 0.0};
        area2 += triangle_area(p1, p2, p3);
    }
    if (area2 <= 0.0) throw TriangulationError("roughness: zero projected area");
    return area3 / area2;
}

SurfaceProperties estimate_surface(const PointCloud& cloud, std::span<const std::size_t> segment,
                                   const Vec3& ground_normal, const RansacConfig& cfg,
                                   std::uint64_t seed, const Vec3& viewpoint) {
    SurfaceProperties props;
    try {
        props.plane = segment_plane(cloud, segment, cfg, seed, viewpoint);
        props.slope_deg = slope_degrees(props.plane.normal(), ground_normal);
        props.rough = roughness(cloud, segment, props.plane);
        props.defined = true;
    } catch (const Error&) {
        props.defined = false;
    }
    return props;
}

}  // namespace mobmap
