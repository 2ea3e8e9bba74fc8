#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mobmap/surface.hpp"
#include "mobmap/synth.hpp"
#include "oracles.hpp"

using namespace mobmap;

namespace {

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return idx;
}

// Quantities invariant over a rigid motion to exercise roughness invariance.
struct Rigid {
    double angle;
    Vec3 axis;
    Vec3 shift;

    Vec3 apply(const Vec3& p) const {
        // Rodrigues rotation.
        const Vec3 k = axis.normalized();
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        return p * c + k.cross(p) * s + k * (k.dot(p) * (1.0 - c)) + shift;
    }
    Vec3 rotate(const Vec3& v) const {
        const Vec3 k = axis.normalized();
        const double c = std::cos(angle);
        const double s = std::sin(angle);
        return v * c + k.cross(v) * s + k * (k.dot(v) * (1.0 - c));
    }
};

}  // namespace

TEST_CASE("slope_degrees analytic angles") {
    CHECK(slope_degrees({0, 0, 1}, {0, 0, 1}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(slope_degrees({1, 0, 0}, {0, 0, 1}) == doctest::Approx(90.0).epsilon(1e-12));
    CHECK(slope_degrees(Vec3{1, 0, 1}.normalized(), {0, 0, 1}) ==
          doctest::Approx(45.0).epsilon(1e-9));
}

TEST_CASE("slope_degrees is symmetric and orientation-free") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const Vec3 a = Vec3{g(rng), g(rng), g(rng)}.normalized();
        const Vec3 b = Vec3{g(rng), g(rng), g(rng)}.normalized();
        const double ab = slope_degrees(a, b);
        CHECK(ab == doctest::Approx(slope_degrees(b, a)).epsilon(1e-9));
        CHECK(ab == doctest::Approx(slope_degrees(-a, b)).epsilon(1e-9));
        CHECK(ab == doctest::Approx(slope_degrees(a, -b)).epsilon(1e-9));
        CHECK(ab >= 0.0);
        CHECK(ab <= 90.0);
    }
}

TEST_CASE("delaunay of the unit square gives 2 triangles covering area 1") {
    const std::vector<Vec2> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    const auto tris = delaunay_2d(square);
    REQUIRE(tris.size() == 2);
    TriMesh mesh;
    for (const auto& p : square) mesh.vertices.push_back({p.x, p.y, 0});
    mesh.triangles = tris;
    CHECK(mesh_area(mesh) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("delaunay fans around an interior point") {
    const std::vector<Vec2> pts{{0, 0}, {2, 0}, {1, 2}, {1, 0.7}};
    const auto tris = delaunay_2d(pts);
    CHECK(tris.size() == 3);
}

TEST_CASE("delaunay satisfies the empty-circumcircle property on random sets") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
        std::vector<Vec2> pts(50);
        for (auto& p : pts) p = {u(rng), u(rng)};
        const auto tris = delaunay_2d(pts);
        CHECK(oracle::delaunay_empty_circumcircles(pts, tris));
    }
}

TEST_CASE("delaunay triangle count obeys 2n - h - 2") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<Vec2> pts(60);
        for (auto& p : pts) p = {u(rng), u(rng)};
        const auto tris = delaunay_2d(pts);
        const auto hull = oracle::convex_hull(pts);
        CHECK(tris.size() == 2 * pts.size() - hull.size() - 2);
    }
}

TEST_CASE("delaunay total area equals the hull's shoelace area") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    std::vector<Vec2> pts(80);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const auto tris = delaunay_2d(pts);
    TriMesh mesh;
    for (const auto& p : pts) mesh.vertices.push_back({p.x, p.y, 0});
    mesh.triangles = tris;
    const auto hull = oracle::convex_hull(pts);
    CHECK(mesh_area(mesh) == doctest::Approx(oracle::shoelace_area(pts, hull)).epsilon(1e-9));
}

TEST_CASE("delaunay merges duplicates and rejects degenerate input") {
    const std::vector<Vec2> dup{{0, 0}, {0, 0}, {1, 0}, {1, 0}, {0, 1}};
    const auto tris = delaunay_2d(dup);
    REQUIRE(tris.size() == 1);
    for (std::size_t v : tris[0].v) CHECK((v == 0 || v == 2 || v == 4));

    CHECK_THROWS_AS(delaunay_2d(std::vector<Vec2>{{0, 0}, {1, 0}}), TriangulationError);
    CHECK_THROWS_AS(delaunay_2d(std::vector<Vec2>{{0, 0}, {1, 0}, {2, 0}, {3, 0}}),
                    TriangulationError);
}

TEST_CASE("mesh_area of canonical shapes") {
    TriMesh tri;
    tri.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    tri.triangles = {{0, 1, 2}};
    CHECK(mesh_area(tri) == doctest::Approx(0.5).epsilon(1e-12));

    TriMesh square;
    square.vertices = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}};
    square.triangles = {{0, 1, 2}, {0, 2, 3}};
    CHECK(mesh_area(square) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("segment_plane recovers an exact ramp") {
    synth::SceneSpec spec;
    spec.primitives.push_back(synth::parse_primitive("ramp:angle=25,w=1,d=1"));
    spec.density = 3000;
    spec.world_frame = true;
    spec.seed = 3;
    const auto scene = synth::generate(spec);

    RansacConfig cfg;
    const auto model = segment_plane(scene.cloud, all_indices(scene.cloud.size()), cfg, 5,
                                     {0, 0, 10});
    const Vec3 truth = scene.faces[0].normal;
    double ang = angle_between(model.normal(), truth);
    ang = std::min(ang, M_PI - ang);
    CHECK(ang < 1e-9);
    // Every sampled point sits on the recovered plane.
    for (const Vec3& p : scene.cloud.points) CHECK(model.distance(p) < 1e-9);
}

TEST_CASE("segment_plane survives 5% outliers within a degree and a centimeter") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PointCloud cloud;
    const double rad = 30.0 * M_PI / 180.0;
    for (int i = 0; i < 950; ++i) {
        const double x = u(rng);
        const double span = u(rng);
        cloud.push_back({x, span * std::cos(rad), span * std::sin(rad)});
    }
    for (int i = 0; i < 50; ++i) cloud.push_back({u(rng), u(rng), 0.5 + u(rng)});

    RansacConfig cfg;
    const auto model = segment_plane(cloud, all_indices(cloud.size()), cfg, 23, {0, 0, 10});
    const Vec3 truth{0, -std::sin(rad), std::cos(rad)};
    double ang = angle_between(model.normal(), truth);
    ang = std::min(ang, M_PI - ang);
    CHECK(ang < 1.0 * M_PI / 180.0);
    CHECK(std::abs(model.d) < 0.01);
}

TEST_CASE("segment_plane flags collinear segments as undefined") {
    PointCloud cloud;
    for (int i = 0; i < 3; ++i) cloud.push_back({i * 0.1, 0, 0});
    const auto props = estimate_surface(cloud, all_indices(3), {0, 0, 1}, RansacConfig{}, 1,
                                        {0, 0, 1});
    CHECK_FALSE(props.defined);
}

TEST_CASE("roughness of in-plane points is exactly 1") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PointCloud cloud;
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        const double y = u(rng);
        cloud.push_back({x, y, 0.25 * x - 0.1 * y + 2.0});
    }
    PlaneModel plane;
    const Vec3 n = Vec3{-0.25, 0.1, 1}.normalized();
    plane.a = n.x;
    plane.b = n.y;
    plane.c = n.z;
    plane.d = -n.z * 2.0;
    const double r = roughness(cloud, all_indices(cloud.size()), plane);
    CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("60-degree tent has roughness 2 against its base plane") {
    PointCloud cloud;
    const double tan60 = std::tan(60.0 * M_PI / 180.0);
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double x = -0.5 + i * 0.05;
            const double y = j * 0.05;
            cloud.push_back({x, y, (0.5 - std::abs(x)) * tan60});
        }
    }
    PlaneModel base;  // z = tan60/4 horizontal plane; any horizontal plane projects equally
    base.a = 0;
    base.b = 0;
    base.c = 1;
    base.d = -tan60 / 4.0;
    const double r = roughness(cloud, all_indices(cloud.size()), base);
    CHECK(r == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("corrugation roughness tracks the quadrature oracle within 5%") {
    synth::SceneSpec spec;
    spec.primitives.push_back(synth::parse_primitive("corrugation:amp=0.05,period=0.5,w=1,d=1"));
    spec.density = 6000;
    spec.world_frame = true;
    spec.seed = 31;
    const auto scene = synth::generate(spec);

    PlaneModel base;  // the fitted plane of a symmetric corrugation is its midplane
    base.a = 0;
    base.b = 0;
    base.c = 1;
    base.d = 0;
    const double r = roughness(scene.cloud, all_indices(scene.cloud.size()), base);
    const double expected = oracle::corrugation_area_ratio(0.05, 0.5);
    CHECK(std::abs(r - expected) / expected < 0.05);
}

TEST_CASE("roughness never drops below 1, triangle by triangle") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        PointCloud cloud;
        for (int i = 0; i < 100; ++i) {
            cloud.push_back({u(rng), u(rng), 0.2 * u(rng)});
        }
        PlaneModel plane;  // deliberately not the least-squares plane
        const Vec3 n = Vec3{0.1 * u(rng), 0.1 * u(rng), 1.0}.normalized();
        plane.a = n.x;
        plane.b = n.y;
        plane.c = n.z;
        plane.d = -0.1;
        CHECK(roughness(cloud, all_indices(cloud.size()), plane) >= 1.0 - 1e-9);
    }
}

TEST_CASE("roughness is invariant under rigid motion") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PointCloud cloud;
    for (int i = 0; i < 400; ++i) {
        const double x = u(rng);
        const double y = u(rng);
        cloud.push_back({x, y, 0.04 * std::sin(12.0 * x)});
    }
    PlaneModel plane{};  // z = 0
    plane.a = plane.b = 0;
    plane.c = 1;
    plane.d = 0;
    const double base = roughness(cloud, all_indices(cloud.size()), plane);

    const Rigid motion{0.83, {0.3, -0.5, 0.8}, {4.0, -2.0, 7.5}};
    PointCloud moved;
    for (const Vec3& p : cloud.points) moved.push_back(motion.apply(p));
    const Vec3 n2 = motion.rotate({0, 0, 1});
    PlaneModel plane2;
    plane2.a = n2.x;
    plane2.b = n2.y;
    plane2.c = n2.z;
    plane2.d = -n2.dot(motion.apply({0, 0, 0}));
    const double rotated = roughness(moved, all_indices(moved.size()), plane2);
    CHECK(rotated == doctest::Approx(base).epsilon(1e-6));
}
