#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "mobmap/segmentation.hpp"
#include "oracles.hpp"

using namespace mobmap;

namespace {

// Union-find connectivity oracle over the (radius-neighbour AND color-close)
// graph, for scenes where intra-face colors match and inter-face colors do not.
std::vector<int> connected_components(const PointCloud& cloud, double radius, double c_th) {
    std::vector<Ycrcb> ycc(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) ycc[i] = rgb_to_ycrcb(cloud.colors[i]);
    std::vector<int> comp(cloud.size(), -1);
    int next = 0;
    for (std::size_t s = 0; s < cloud.size(); ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> queue{s};
        comp[s] = next;
        while (!queue.empty()) {
            const std::size_t cur = queue.back();
            queue.pop_back();
            for (std::size_t j = 0; j < cloud.size(); ++j) {
                if (comp[j] >= 0) continue;
                if ((cloud.points[j] - cloud.points[cur]).norm() > radius) continue;
                if (color_distance(ycc[cur], ycc[j]) >= c_th) continue;
                comp[j] = next;
                queue.push_back(j);
            }
        }
        next++;
    }
    return comp;
}

PointCloud patch(double x0, double y0, int nx, int ny, double spacing, Rgb8 color) {
    PointCloud c;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            c.push_back({x0 + i * spacing, y0 + j * spacing, 0.0}, color);
        }
    }
    return c;
}

PointCloud concat(const PointCloud& a, const PointCloud& b) {
    PointCloud out = a;
    out.points.insert(out.points.end(), b.points.begin(), b.points.end());
    out.colors.insert(out.colors.end(), b.colors.begin(), b.colors.end());
    return out;
}

}  // namespace

TEST_CASE("rgb_to_ycrcb endpoints") {
    const auto black = rgb_to_ycrcb({0, 0, 0});
    CHECK(black.y == 0.0);
    CHECK(black.cr == 128.0);
    CHECK(black.cb == 128.0);

    const auto white = rgb_to_ycrcb({255, 255, 255});
    CHECK(white.y == doctest::Approx(255.0).epsilon(1e-12));
    CHECK(white.cr == doctest::Approx(128.0).epsilon(1e-12));
    CHECK(white.cb == doctest::Approx(128.0).epsilon(1e-12));
}

TEST_CASE("rgb_to_ycrcb pure red with chroma clamping") {
    // Hand evaluation: Y = 0.299*255 = 76.245, Cr = 178.755*0.713+128 = 255.45
    // (clamped), Cb = -76.245*0.564+128 = 84.99782.
    const auto red = rgb_to_ycrcb({255, 0, 0});
    CHECK(red.y == doctest::Approx(76.245).epsilon(1e-9));
    CHECK(red.cr == 255.0);
    CHECK(red.cb == doctest::Approx(84.99782).epsilon(1e-6));
}

TEST_CASE("color_distance basics and random-pair arithmetic") {
    CHECK(color_distance({10, 20, 30}, {10, 20, 30}) == 0.0);
    CHECK(color_distance({0, 128, 128}, {255, 128, 128}) == 255.0);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 255.0);
    for (int i = 0; i < 100; ++i) {
        const Ycrcb a{u(rng), u(rng), u(rng)};
        const Ycrcb b{u(rng), u(rng), u(rng)};
        const double expected = std::sqrt((a.y - b.y) * (a.y - b.y) +
                                          (a.cr - b.cr) * (a.cr - b.cr) +
                                          (a.cb - b.cb) * (a.cb - b.cb));
        CHECK(color_distance(a, b) == doctest::Approx(expected).epsilon(1e-15));
    }
}

TEST_CASE("one uniformly colored plane grows into a single segment") {
    const auto cloud = patch(0, 0, 20, 20, 0.01, {120, 50, 200});
    const KdTree tree(cloud);
    GrowConfig cfg;
    const auto segments = region_grow(cloud, tree, cfg, 1);
    REQUIRE(segments.size() == 1);
    CHECK(segments[0].indices.size() == cloud.size());
    CHECK_FALSE(segments[0].undersized);
}

TEST_CASE("three differently colored faces give three segments") {
    // Mimics a box after ground removal: three spatially adjacent patches
    // with face-distinct RGB-N colors.
    auto cloud = concat(patch(0.0, 0.0, 15, 15, 0.01, {200, 30, 30}),
                        concat(patch(0.15, 0.0, 15, 15, 0.01, {30, 200, 30}),
                               patch(0.0, 0.15, 15, 15, 0.01, {30, 30, 200})));
    const KdTree tree(cloud);
    GrowConfig cfg;
    const auto segments = region_grow(cloud, tree, cfg, 7);

    std::size_t full = 0;
    for (const auto& s : segments) {
        if (!s.undersized) full++;
    }
    CHECK(segments.size() == 3);
    CHECK(full == 3);
    for (const auto& s : segments) CHECK(s.indices.size() == 225);
}

TEST_CASE("identical colors but a spatial gap produce two segments") {
    const Rgb8 color{90, 90, 90};
    // Two 10x10 patches, 10cm apart, radius 2.5cm.
    const auto cloud = concat(patch(0.0, 0.0, 10, 10, 0.01, color),
                              patch(0.3, 0.0, 10, 10, 0.01, color));
    const KdTree tree(cloud);
    GrowConfig cfg;
    const auto segments = region_grow(cloud, tree, cfg, 5);
    CHECK(segments.size() == 2);

    // Connectivity oracle agrees.
    const auto comp = connected_components(cloud, cfg.radius, cfg.color_threshold);
    CHECK(*std::max_element(comp.begin(), comp.end()) == 1);
}

TEST_CASE("segments partition the available points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 0.3);
    std::uniform_int_distribution<int> color_pick(0, 2);
    PointCloud cloud;
    const Rgb8 palette[3] = {{220, 10, 10}, {10, 220, 10}, {10, 10, 220}};
    for (int i = 0; i < 400; ++i) {
        cloud.push_back({u(rng), u(rng), 0.0}, palette[color_pick(rng)]);
    }
    const KdTree tree(cloud);
    GrowConfig cfg;
    const auto segments = region_grow(cloud, tree, cfg, 13);

    std::vector<std::size_t> seen;
    for (const auto& s : segments) {
        CHECK(!s.indices.empty());
        seen.insert(seen.end(), s.indices.begin(), s.indices.end());
    }
    std::sort(seen.begin(), seen.end());
    REQUIRE(seen.size() == cloud.size());
    for (std::size_t i = 0; i < seen.size(); ++i) CHECK(seen[i] == i);
}

TEST_CASE("admissible mask keeps flagged points out of every segment") {
    const auto cloud = patch(0, 0, 10, 10, 0.01, {50, 50, 50});
    const KdTree tree(cloud);
    std::vector<bool> admissible(cloud.size(), true);
    admissible[0] = admissible[57] = false;
    GrowConfig cfg;
    const auto segments = region_grow(cloud, tree, cfg, 3, &admissible);
    std::size_t total = 0;
    for (const auto& s : segments) {
        total += s.indices.size();
        for (std::size_t i : s.indices) CHECK(admissible[i]);
    }
    CHECK(total == cloud.size() - 2);
}

TEST_CASE("membership is seed-order invariant on unambiguous scenes") {
    auto cloud = concat(patch(0.0, 0.0, 12, 12, 0.01, {250, 20, 20}),
                        patch(0.12, 0.0, 12, 12, 0.01, {20, 250, 20}));
    const KdTree tree(cloud);
    GrowConfig cfg;

    auto as_sets = [](std::vector<Segment> segments) {
        std::vector<std::vector<std::size_t>> sets;
        for (auto& s : segments) {
            std::sort(s.indices.begin(), s.indices.end());
            sets.push_back(std::move(s.indices));
        }
        std::sort(sets.begin(), sets.end());
        return sets;
    };

    const auto first = as_sets(region_grow(cloud, tree, cfg, 1));
    for (std::uint64_t seed : {2ull, 3ull, 99ull, 12345ull}) {
        CHECK(as_sets(region_grow(cloud, tree, cfg, seed)) == first);
    }
}

TEST_CASE("every segment is chain-connected through close-color radius neighbours") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 0.25);
    PointCloud cloud;
    for (int i = 0; i < 300; ++i) {
        const double x = u(rng);
        const std::uint8_t shade = x < 0.12 ? 60 : 180;
        cloud.push_back({x, u(rng), 0.0}, {shade, shade, shade});
    }
    const KdTree tree(cloud);
    GrowConfig cfg;
    cfg.radius = 0.04;
    const auto segments = region_grow(cloud, tree, cfg, 19);

    std::vector<Ycrcb> ycc(cloud.size());
    for (std::size_t i = 0; i < cloud.size(); ++i) ycc[i] = rgb_to_ycrcb(cloud.colors[i]);

    for (const auto& seg : segments) {
        std::vector<bool> member(cloud.size(), false);
        for (std::size_t i : seg.indices) member[i] = true;
        // BFS from the seed over admissible links only.
        std::vector<bool> reached(cloud.size(), false);
        std::vector<std::size_t> queue{seg.seed};
        reached[seg.seed] = true;
        while (!queue.empty()) {
            const std::size_t cur = queue.back();
            queue.pop_back();
            for (std::size_t j : tree.radius(cloud.points[cur], cfg.radius)) {
                if (reached[j] || !member[j]) continue;
                if (color_distance(ycc[cur], ycc[j]) >= cfg.color_threshold) continue;
                reached[j] = true;
                queue.push_back(j);
            }
        }
        for (std::size_t i : seg.indices) CHECK(reached[i]);
    }
}

TEST_CASE("empty input grows no segments") {
    PointCloud empty;
    const KdTree tree(empty);
    CHECK(region_grow(empty, tree, GrowConfig{}, 1).empty());
}

TEST_CASE("undersized segments are flagged") {
    auto cloud = concat(patch(0.0, 0.0, 10, 10, 0.01, {200, 30, 30}),
                        patch(0.5, 0.0, 2, 2, 0.01, {30, 200, 30}));
    const KdTree tree(cloud);
    GrowConfig cfg;  // min size 30
    const auto segments = region_grow(cloud, tree, cfg, 23);
    REQUIRE(segments.size() == 2);
    std::map<std::size_t, bool> by_size;
    for (const auto& s : segments) by_size[s.indices.size()] = s.undersized;
    CHECK_FALSE(by_size.at(100));
    CHECK(by_size.at(4));
}
