#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mobmap/camera.hpp"

using namespace mobmap;

TEST_CASE("project_point on the optical axis lands on the principal point") {
    CameraIntrinsics cam;
    cam.fx = cam.fy = 500;
    cam.cx = 320;
    cam.cy = 240;
    const auto p = project_point({0, 0, 1}, cam);
    CHECK(p.status == ProjectionStatus::visible);
    CHECK(p.x == 320);
    CHECK(p.y == 240);
}

TEST_CASE("project_point hand-evaluated pixel") {
    CameraIntrinsics cam;
    cam.fx = 570;
    cam.fy = 570;
    cam.cx = 320;
    cam.cy = 240;
    cam.width = 1000;  // keep x = 605 in frame
    const auto p = project_point({0.5, 0, 1}, cam);
    CHECK(p.status == ProjectionStatus::visible);
    CHECK(p.x == 605);
}

TEST_CASE("project_point rejects points behind the camera") {
    CameraIntrinsics cam;
    CHECK(project_point({0, 0, -1}, cam).status == ProjectionStatus::behind_camera);
    CHECK(project_point({0, 0, 0}, cam).status == ProjectionStatus::behind_camera);
}

TEST_CASE("projection offsets shift pixels as factory offsets") {
    CameraIntrinsics cam;
    cam.ox = 4;
    cam.oy = -3;
    const auto p = project_point({0, 0, 2}, cam);
    CHECK(p.x == 320 - 4);
    CHECK(p.y == 240 + 3);
}

TEST_CASE("projection is exactly depth-homogeneous for power-of-two scales") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> uz(0.1, 5.0);
    std::uniform_int_distribution<int> exp2(-3, 3);
    CameraIntrinsics cam;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 p{u(rng), u(rng), uz(rng)};
        const double t = std::ldexp(1.0, exp2(rng));
        const auto a = project_point(p, cam);
        const auto b = project_point(p * t, cam);
        CHECK(a.u == b.u);
        CHECK(a.v == b.v);
    }
}

TEST_CASE("projection is depth-homogeneous for arbitrary scales within 1e-9 px") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> uz(0.1, 5.0);
    std::uniform_real_distribution<double> ut(0.01, 100.0);
    CameraIntrinsics cam;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 p{u(rng), u(rng), uz(rng)};
        const double t = ut(rng);
        const auto a = project_point(p, cam);
        const auto b = project_point(p * t, cam);
        CHECK(a.u == doctest::Approx(b.u).epsilon(1e-9));
        CHECK(a.v == doctest::Approx(b.v).epsilon(1e-9));
    }
}

TEST_CASE("mobility colormap endpoints and midpoint") {
    CHECK(mobility_color(1.0) == Rgb8{0, 255, 0});
    CHECK(mobility_color(0.0) == Rgb8{255, 0, 0});
    CHECK(mobility_color(0.5) == Rgb8{128, 128, 0});  // round-half-up
}

TEST_CASE("splat paints a 3x3 block clipped to the raster") {
    CameraIntrinsics cam;
    cam.width = 8;
    cam.height = 8;
    cam.cx = 0;  // project to the corner pixel
    cam.cy = 0;
    ImageRgb img(8, 8, {9, 9, 9});
    PointCloud cloud;
    cloud.push_back({0, 0, 1});
    splat_points(img, cloud, {Rgb8{1, 2, 3}}, cam);

    int painted = 0;
    for (const Rgb8& px : img.pixels) {
        if (px == Rgb8{1, 2, 3}) painted++;
    }
    CHECK(painted == 4);  // corner splat: 2x2 of the 3x3 survives clipping
    CHECK(img.at(0, 0) == Rgb8{1, 2, 3});
    CHECK(img.at(1, 1) == Rgb8{1, 2, 3});
    CHECK(img.at(2, 2) == Rgb8{9, 9, 9});
}

TEST_CASE("depth test keeps the nearer point regardless of draw order") {
    CameraIntrinsics cam;
    cam.width = 32;
    cam.height = 32;
    cam.cx = 16;
    cam.cy = 16;

    PointCloud near_far;
    near_far.push_back({0, 0, 1.0});
    near_far.push_back({0, 0, 2.0});
    PointCloud far_near;
    far_near.push_back({0, 0, 2.0});
    far_near.push_back({0, 0, 1.0});

    ImageRgb a(32, 32);
    splat_points(a, near_far, {Rgb8{10, 0, 0}, Rgb8{0, 10, 0}}, cam);
    ImageRgb b(32, 32);
    splat_points(b, far_near, {Rgb8{0, 10, 0}, Rgb8{10, 0, 0}}, cam);

    CHECK(a.at(16, 16) == Rgb8{10, 0, 0});
    CHECK(b.at(16, 16) == Rgb8{10, 0, 0});
    CHECK(a.pixels == b.pixels);
}

TEST_CASE("render_overlay paints map segments with their score colors") {
    CameraIntrinsics cam;
    cam.width = 64;
    cam.height = 64;
    cam.cx = 32;
    cam.cy = 32;
    cam.fx = cam.fy = 64;

    PointCloud cloud;
    cloud.push_back({0, 0, 1});       // -> (32,32)
    cloud.push_back({0.25, 0, 1});    // -> (48,32)

    MobilityMap map;
    ScoredSegment walkable;
    walkable.indices = {0};
    walkable.score = 1.0;
    ScoredSegment blocked;
    blocked.indices = {1};
    blocked.score = 0.0;
    map.entries = {walkable, blocked};

    const ImageRgb base(64, 64, {7, 7, 7});
    const ImageRgb out = render_overlay(base, map, cloud, cam);
    CHECK(out.at(32, 32) == Rgb8{0, 255, 0});
    CHECK(out.at(48, 32) == Rgb8{255, 0, 0});
    CHECK(out.at(5, 5) == Rgb8{7, 7, 7});  // untouched background

    ImageRgb wrong(32, 32);
    CHECK_THROWS_AS(render_overlay(wrong, map, cloud, cam), ParameterError);
}
