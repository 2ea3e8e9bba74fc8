#include "mobmap/plane.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mobmap {

namespace {

constexpr double kCollinearArea = 1e-10;  // m^2, minimum sample triangle area

PlaneModel plane_from_point_normal(const Vec3& n_unit, const Vec3& point, const Vec3& viewpoint) {
    PlaneModel m;
    Vec3 n = n_unit;
    // Eq.-4 convention: normal points toward the viewpoint.
    if (n.dot(viewpoint - point) < 0.0) n = -n;
    m.a = n.x;
    m.b = n.y;
    m.c = n.z;
    m.d = -n.dot(point);
    return m;
}

}  // namespace

std::uint64_t ransac_iterations(double p, double epsilon, int gamma) {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("ransac_iterations: p must be in (0,1)");
    if (!(epsilon >= 0.0 && epsilon < 1.0)) {
        throw ParameterError("ransac_iterations: epsilon must be in [0,1)");
    }
    if (gamma < 1) throw ParameterError("ransac_iterations: gamma must be >= 1");

    const double inlier_all = std::pow(1.0 - epsilon, gamma);
    if (inlier_all >= 1.0) return 1;  // every sample succeeds
    const double k = std::log(1.0 - p) / std::log(1.0 - inlier_all);
    return static_cast<std::uint64_t>(std::ceil(k));
}

PlaneModel least_squares_plane(const PointCloud& cloud, std::span<const std::size_t> indices,
                               const Vec3& viewpoint) {
    const LocalPlaneFit fit = local_plane_fit(cloud, indices);
    if (fit.degenerate) {
        throw DegenerateNeighborhoodError("least_squares_plane: collinear points");
    }
    return plane_from_point_normal(fit.normal, fit.centroid, viewpoint);
}

PlaneModel ransac_plane(const PointCloud& cloud, const RansacConfig& cfg, std::uint64_t seed,
                        const Vec3& viewpoint) {
    const std::size_t n = cloud.size();
    if (n < 3) throw InsufficientDataError("ransac_plane: need at least 3 points");
    if (!(cfg.distance_threshold > 0.0)) {
        throw ParameterError("ransac_plane: distance_threshold must be > 0");
    }

    const std::uint64_t iterations =
        std::min(ransac_iterations(cfg.success_prob, cfg.outlier_ratio, cfg.sample_size),
                 cfg.max_iterations);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);

    bool found = false;
    Vec3 best_normal;
    double best_offset = 0.0;
    std::size_t best_count = 0;
    double best_dist_sum = 0.0;

    for (std::uint64_t it = 0; it < iterations; ++it) {
        // Step 1: three non-collinear unique points; re-roll collinear draws.
        Vec3 pa, pb, pc;
        Vec3 normal;
        bool ok = false;
        for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
            const std::size_t ia = pick(rng);
            const std::size_t ib = pick(rng);
            const std::size_t ic = pick(rng);
            if (ia == ib || ib == ic || ia == ic) continue;
            pa = cloud.points[ia];
            pb = cloud.points[ib];
            pc = cloud.points[ic];
            const Vec3 cr = (pb - pa).cross(pc - pa);
            if (0.5 * cr.norm() < kCollinearArea) continue;
            normal = cr.normalized();
            ok = true;
        }
        if (!ok) continue;

        // Steps 2-4: model coefficients, distances, inlier count.
        const double offset = -normal.dot(pa);
        std::size_t count = 0;
        double dist_sum = 0.0;
        for (const Vec3& p : cloud.points) {
            const double dist = std::abs(normal.dot(p) + offset);
            if (dist <= cfg.distance_threshold) {
                count++;
                dist_sum += dist;
            }
        }
        if (count > best_count || (count == best_count && dist_sum < best_dist_sum)) {
            best_count = count;
            best_dist_sum = dist_sum;
            best_normal = normal;
            best_offset = offset;
            found = true;
        }
    }

    if (!found || best_count < 3) throw NoPlaneFoundError("ransac_plane: no plane with 3 inliers");

    auto collect = [&](const PlaneModel& m) {
        std::vector<std::size_t> inliers;
        for (std::size_t i = 0; i < n; ++i) {
            if (m.distance(cloud.points[i]) <= cfg.distance_threshold) inliers.push_back(i);
        }
        return inliers;
    };

    PlaneModel sample = plane_from_point_normal(best_normal, best_normal * (-best_offset), viewpoint);
    std::vector<std::size_t> sample_inliers = collect(sample);

    // Least-squares refinement over the winning inlier set.
    PlaneModel refined = sample;
    try {
        refined = least_squares_plane(cloud, sample_inliers, viewpoint);
    } catch (const Error&) {
        // Degenerate inlier set; keep the sample model.
    }
    refined.inliers = collect(refined);
    if (refined.inliers.size() < 3) {
        refined = sample;
        refined.inliers = std::move(sample_inliers);
    }
    return refined;
}

GroundRemoval remove_ground(const PointCloud& cloud, const OrientedNormalField& field,
                            const RansacConfig& cfg, std::uint64_t seed) {
    GroundRemoval out;
    out.plane = ransac_plane(cloud, cfg, seed, field.viewpoint);
    out.ground = out.plane.inliers;

    std::vector<bool> is_ground(cloud.size(), false);
    for (std::size_t i : out.ground) is_ground[i] = true;

    out.rest_normals.viewpoint = field.viewpoint;
    const bool colored = cloud.has_colors();
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        if (is_ground[i]) continue;
        if (colored) out.rest.push_back(cloud.points[i], cloud.colors[i]);
        else out.rest.push_back(cloud.points[i]);
        out.rest_normals.normals.push_back(field.normals[i]);
        out.rest_normals.status.push_back(field.status[i]);
        out.rest_to_original.push_back(i);
    }
    return out;
}

}  // namespace mobmap
