#include "mobmap/normals.hpp"

#include <algorithm>
#include <cmath>

namespace mobmap {

LocalPlaneFit local_plane_fit(const PointCloud& cloud, std::span<const std::size_t> neighbors) {
    const std::size_t k = neighbors.size();
    if (k < 3) throw InsufficientDataError("local_plane_fit: need at least 3 points");

    Vec3 centroid;
    for (std::size_t i : neighbors) centroid += cloud.points[i];
    centroid = centroid / static_cast<double>(k);

    Mat3 cov;
    for (std::size_t i : neighbors) {
        const Vec3 d = cloud.points[i] - centroid;
        cov(0, 0) += d.x * d.x;
        cov(0, 1) += d.x * d.y;
        cov(0, 2) += d.x * d.z;
        cov(1, 1) += d.y * d.y;
        cov(1, 2) += d.y * d.z;
        cov(2, 2) += d.z * d.z;
    }
    for (double& v : cov.m) v /= static_cast<double>(k);
    cov(1, 0) = cov(0, 1);
    cov(2, 0) = cov(0, 2);
    cov(2, 1) = cov(1, 2);

    const double trace = cov(0, 0) + cov(1, 1) + cov(2, 2);
    if (trace <= 0.0) {
        throw DegenerateNeighborhoodError("local_plane_fit: all points identical");
    }

    const SymEigen3 eig = sym_eigen3(cov);
    LocalPlaneFit fit;
    fit.centroid = centroid;
    fit.covariance = cov;
    fit.eigenvalues = eig.values;
    fit.normal = eig.vectors[0];
    // Collinear neighbourhood: the two smallest eigenvalues vanish and the
    // normal direction is not unique.
    fit.degenerate = eig.values[1] <= 1e-12 * std::max(eig.values[2], 0.0);
    return fit;
}

OrientResult orient_normal(const Vec3& fit_normal, const Vec3& point, const Vec3& viewpoint) {
    const double d = fit_normal.dot(viewpoint - point);
    if (d > 0.0) return {fit_normal, false};
    if (d < 0.0) return {-fit_normal, false};
    return {fit_normal, true};
}

OrientedNormalField estimate_normals(const PointCloud& cloud, const KdTree& index,
                                     std::size_t k, const Vec3& viewpoint) {
    const std::size_t n = cloud.size();
    if (k < 3) throw ParameterError("estimate_normals: k must be >= 3");
    if (n < 4) throw InsufficientDataError("estimate_normals: need at least 4 points");
    const std::size_t k_eff = std::min(k, n - 1);  // self is excluded from its neighbourhood

    OrientedNormalField field;
    field.normals.resize(n);
    field.status.resize(n, NormalStatus::ok);
    field.viewpoint = viewpoint;

    for (std::size_t i = 0; i < n; ++i) {
        const auto nb = index.knn(cloud.points[i], k_eff, i);
        LocalPlaneFit fit;
        try {
            fit = local_plane_fit(cloud, nb);
        } catch (const DegenerateNeighborhoodError&) {
            field.status[i] = NormalStatus::degenerate;
            continue;
        }
        if (fit.degenerate) {
            field.status[i] = NormalStatus::degenerate;
            continue;
        }
        const OrientResult oriented = orient_normal(fit.normal, cloud.points[i], viewpoint);
        field.normals[i] = oriented.normal;
        if (oriented.ambiguous) field.status[i] = NormalStatus::ambiguous;
    }
    return field;
}

std::vector<Rgb8> rgbn_encode(const OrientedNormalField& field) {
    const std::size_t n = field.size();
    if (n == 0) throw InsufficientDataError("rgbn_encode: empty normal field");

    Vec3 lo{1e300, 1e300, 1e300};
    Vec3 hi{-1e300, -1e300, -1e300};
    std::size_t valid = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!field.valid(i)) continue;
        const Vec3& nv = field.normals[i];
        lo = {std::min(lo.x, nv.x), std::min(lo.y, nv.y), std::min(lo.z, nv.z)};
        hi = {std::max(hi.x, nv.x), std::max(hi.y, nv.y), std::max(hi.z, nv.z)};
        valid++;
    }
    if (valid == 0) throw InsufficientDataError("rgbn_encode: no valid normals");

    auto channel = [](double v, double mn, double mx) -> std::uint8_t {
        const double range = mx - mn;
        if (range <= 0.0) return 0;  // constant component carries no contrast
        const double scaled = 255.0 / range * (v - mn);
        const double rounded = std::floor(scaled + 0.5);
        return static_cast<std::uint8_t>(std::clamp(rounded, 0.0, 255.0));
    };

    std::vector<Rgb8> colors(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!field.valid(i)) continue;  // stays (0,0,0)
        const Vec3& nv = field.normals[i];
        colors[i] = {channel(nv.x, lo.x, hi.x), channel(nv.y, lo.y, hi.y),
                     channel(nv.z, lo.z, hi.z)};
    }
    return colors;
}

}  // namespace mobmap
