#pragma once

#include <array>
#include <span>
#include <vector>

#include "mobmap/types.hpp"

namespace mobmap {

struct Vec2 {
    double x = 0, y = 0;
};

struct Triangle {
    std::array<std::size_t, 3> v{};
};

/// Delaunay triangulation (Bowyer-Watson) of a 2D point set. Duplicate points
/// (within 1e-9 per coordinate) are merged first; triangle vertices index the
/// input sequence, with merged duplicates referred to by their first
/// occurrence. Throws TriangulationError when fewer than 3 unique points
/// remain or all of them are collinear.
std::vector<Triangle> delaunay_2d(std::span<const Vec2> points);

}  // namespace mobmap
