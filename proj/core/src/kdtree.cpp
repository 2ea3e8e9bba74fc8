#include "mobmap/kdtree.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace mobmap {

namespace {

constexpr std::uint32_t kLeafSize = 16;

inline double sqdist(const Vec3& a, const Vec3& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

inline double coord(const Vec3& p, int axis) {
    return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
}

// Heap entry ordered lexicographically by (squared distance, original index),
// so the heap top is the current worst candidate and exact distance ties
// resolve toward the lower index.
struct Cand {
    double d2;
    std::uint32_t idx;
    bool operator<(const Cand& o) const {
        return d2 < o.d2 || (d2 == o.d2 && idx < o.idx);
    }
};

}  // namespace

KdTree::KdTree(const PointCloud& cloud) {
    const std::size_t n = cloud.size();
    idx_.resize(n);
    for (std::size_t i = 0; i < n; ++i) idx_[i] = static_cast<std::uint32_t>(i);
    pts_ = cloud.points;
    nodes_.reserve(n / kLeafSize * 2 + 4);
    if (n > 0) {
        root_ = build(0, static_cast<std::uint32_t>(n));
        // Lay points out in tree order for cache-friendly leaf scans.
        std::vector<Vec3> reordered(n);
        for (std::size_t i = 0; i < n; ++i) reordered[i] = cloud.points[idx_[i]];
        pts_ = std::move(reordered);
    }
}

std::uint32_t KdTree::build(std::uint32_t begin, std::uint32_t end) {
    const std::uint32_t id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    Node node;
    node.begin = begin;
    node.end = end;

    if (end - begin <= kLeafSize) {
        node.axis = -1;
        nodes_[id] = node;
        return id;
    }

    Vec3 lo = pts_[idx_[begin]];
    Vec3 hi = lo;
    for (std::uint32_t i = begin + 1; i < end; ++i) {
        const Vec3& p = pts_[idx_[i]];
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    const Vec3 extent = hi - lo;
    int axis = 0;
    if (extent.y >= extent.x && extent.y >= extent.z) axis = 1;
    else if (extent.z >= extent.x && extent.z >= extent.y) axis = 2;

    const std::uint32_t mid = begin + (end - begin) / 2;
    std::nth_element(idx_.begin() + begin, idx_.begin() + mid, idx_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                         return coord(pts_[a], axis) < coord(pts_[b], axis);
                     });

    node.axis = axis;
    node.split = coord(pts_[idx_[mid]], axis);
    nodes_[id] = node;
    const std::uint32_t left = build(begin, mid);
    const std::uint32_t right = build(mid, end);
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
}

std::vector<std::size_t> KdTree::knn(const Vec3& query, std::size_t k,
                                     std::size_t exclude) const {
    const std::size_t searchable = size() - (exclude != kNoExclude && exclude < size() ? 1 : 0);
    if (k > searchable) {
        throw ParameterError("knn: k exceeds number of searchable points");
    }
    if (k == 0) return {};

    std::vector<Cand> heap;
    heap.reserve(k);
    auto worst = [&]() -> const Cand& { return heap.front(); };

    std::array<std::uint32_t, 64> stack;
    std::size_t top = 0;
    stack[top++] = root_;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (node.axis < 0) {
            for (std::uint32_t i = node.begin; i < node.end; ++i) {
                const std::uint32_t oi = idx_[i];
                if (oi == exclude) continue;
                const Cand c{sqdist(pts_[i], query), oi};
                if (heap.size() < k) {
                    heap.push_back(c);
                    std::push_heap(heap.begin(), heap.end());
                } else if (c < worst()) {
                    std::pop_heap(heap.begin(), heap.end());
                    heap.back() = c;
                    std::push_heap(heap.begin(), heap.end());
                }
            }
            continue;
        }
        const double delta = coord(query, node.axis) - node.split;
        const std::uint32_t near = delta < 0.0 ? node.left : node.right;
        const std::uint32_t far = delta < 0.0 ? node.right : node.left;
        // The far side can still hold an exact-distance tie with a lower
        // index, so only prune on a strictly larger plane distance.
        if (heap.size() < k || delta * delta <= worst().d2) stack[top++] = far;
        stack[top++] = near;
    }

    std::sort(heap.begin(), heap.end());
    std::vector<std::size_t> result(heap.size());
    for (std::size_t i = 0; i < heap.size(); ++i) result[i] = heap[i].idx;
    return result;
}

std::vector<std::size_t> KdTree::radius(const Vec3& query, double r) const {
    if (r < 0.0) throw ParameterError("radius: negative search radius");
    std::vector<std::size_t> result;
    if (size() == 0) return result;
    const double r2 = r * r;

    std::array<std::uint32_t, 64> stack;
    std::size_t top = 0;
    stack[top++] = root_;
    while (top > 0) {
        const Node& node = nodes_[stack[--top]];
        if (node.axis < 0) {
            for (std::uint32_t i = node.begin; i < node.end; ++i) {
                if (sqdist(pts_[i], query) <= r2) result.push_back(idx_[i]);
            }
            continue;
        }
        const double delta = coord(query, node.axis) - node.split;
        const std::uint32_t near = delta < 0.0 ? node.left : node.right;
        const std::uint32_t far = delta < 0.0 ? node.right : node.left;
        if (delta * delta <= r2) stack[top++] = far;
        stack[top++] = near;
    }
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace mobmap
