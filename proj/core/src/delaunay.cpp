#include "mobmap/delaunay.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace mobmap {

namespace {

constexpr double kDupTol = 1e-9;       // per-coordinate duplicate merge
constexpr double kInCircleEps = 1e-12; // determinant threshold
constexpr double kMinArea = 1e-14;     // m^2, zero-area triangle rejection

inline double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Strict containment of d in the circumcircle of CCW triangle (a,b,c).
bool in_circumcircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
    const double ax = a.x - d.x, ay = a.y - d.y;
    const double bx = b.x - d.x, by = b.y - d.y;
    const double cx = c.x - d.x, cy = c.y - d.y;
    const double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
                       (bx * bx + by * by) * (ax * cy - cx * ay) +
                       (cx * cx + cy * cy) * (ax * by - bx * ay);
    return det > kInCircleEps;
}

}  // namespace

std::vector<Triangle> delaunay_2d(std::span<const Vec2> points) {
    // Merge duplicates, remembering the first occurrence as representative.
    std::vector<std::size_t> unique;
    {
        std::vector<std::size_t> order(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            if (points[a].x != points[b].x) return points[a].x < points[b].x;
            if (points[a].y != points[b].y) return points[a].y < points[b].y;
            return a < b;
        });
        std::vector<bool> dup(points.size(), false);
        for (std::size_t i = 0; i < order.size(); ++i) {
            if (dup[order[i]]) continue;
            for (std::size_t j = i + 1; j < order.size(); ++j) {
                if (points[order[j]].x - points[order[i]].x > kDupTol) break;
                if (std::abs(points[order[j]].y - points[order[i]].y) <= kDupTol) {
                    dup[order[j]] = true;
                    // Keep the lower original index as representative.
                    if (order[j] < order[i]) std::swap(order[i], order[j]);
                }
            }
        }
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (!dup[i]) unique.push_back(i);
        }
    }

    if (unique.size() < 3) throw TriangulationError("delaunay_2d: fewer than 3 unique points");

    // Collinearity: find the largest triangle area over a hull-ish scan.
    {
        double max_area = 0.0;
        const Vec2& p0 = points[unique[0]];
        std::size_t far1 = unique[0];
        double best = -1.0;
        for (std::size_t i : unique) {
            const double d = (points[i].x - p0.x) * (points[i].x - p0.x) +
                             (points[i].y - p0.y) * (points[i].y - p0.y);
            if (d > best) {
                best = d;
                far1 = i;
            }
        }
        for (std::size_t i : unique) {
            max_area = std::max(max_area, 0.5 * std::abs(cross2(p0, points[far1], points[i])));
        }
        if (max_area < kMinArea) throw TriangulationError("delaunay_2d: all points collinear");
    }

    // Working vertex array: unique points followed by the super-triangle.
    std::vector<Vec2> verts;
    verts.reserve(unique.size() + 3);
    for (std::size_t i : unique) verts.push_back(points[i]);

    Vec2 lo = verts[0], hi = verts[0];
    for (const Vec2& p : verts) {
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
    }
    const double cx = 0.5 * (lo.x + hi.x);
    const double cy = 0.5 * (lo.y + hi.y);
    const double span = std::max({hi.x - lo.x, hi.y - lo.y, 1e-6});
    const std::size_t s0 = verts.size();
    verts.push_back({cx - 30.0 * span, cy - 20.0 * span});
    verts.push_back({cx + 30.0 * span, cy - 20.0 * span});
    verts.push_back({cx, cy + 30.0 * span});

    struct Tri {
        std::size_t a, b, c;  // CCW
        bool alive = true;
    };
    std::vector<Tri> tris;
    tris.push_back({s0, s0 + 1, s0 + 2});

    std::vector<std::size_t> bad;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // directed cavity edges
    for (std::size_t vi = 0; vi < s0; ++vi) {
        const Vec2& p = verts[vi];
        bad.clear();
        edges.clear();
        for (std::size_t t = 0; t < tris.size(); ++t) {
            if (!tris[t].alive) continue;
            if (in_circumcircle(verts[tris[t].a], verts[tris[t].b], verts[tris[t].c], p)) {
                bad.push_back(t);
            }
        }
        for (std::size_t t : bad) {
            edges.emplace_back(tris[t].a, tris[t].b);
            edges.emplace_back(tris[t].b, tris[t].c);
            edges.emplace_back(tris[t].c, tris[t].a);
            tris[t].alive = false;
        }
        // Cavity boundary = directed edges whose reverse is absent.
        for (const auto& [ea, eb] : edges) {
            bool boundary = true;
            for (const auto& [fa, fb] : edges) {
                if (fa == eb && fb == ea) {
                    boundary = false;
                    break;
                }
            }
            if (!boundary) continue;
            Tri t{ea, eb, vi};
            if (cross2(verts[t.a], verts[t.b], verts[t.c]) < 0.0) std::swap(t.b, t.c);
            tris.push_back(t);
        }
    }

    std::vector<Triangle> out;
    for (const Tri& t : tris) {
        if (!t.alive) continue;
        if (t.a >= s0 || t.b >= s0 || t.c >= s0) continue;  // touches super-triangle
        const double area = 0.5 * std::abs(cross2(verts[t.a], verts[t.b], verts[t.c]));
        if (area <= kMinArea) continue;
        out.push_back({unique[t.a], unique[t.b], unique[t.c]});
    }
    return out;
}

}  // namespace mobmap
